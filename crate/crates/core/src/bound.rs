//! Error functions and the spanner distance bound built from them.
//!
//! Values are exact rationals. The one exception is [`Family::Power`] with a
//! non-integer exponent: it is evaluated in `f64`, and a result within
//! [`POWER_SNAP_TOLERANCE`] (relative) of an integer is snapped to that
//! integer. Since distances are integral, only values close to an integer can
//! change the outcome of a comparison, so the snap makes those exact.
//!
//! Text grammar:
//!
//! ```text
//! function := const:<c> | affine:<a>:<b> | power:<c>:<e> | table:<v1>,<v2>,...
//! bound    := linear(<function>;<function>) | general(<function>)
//! number   := <int> | <int>/<int> | <int>.<digits>
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const POWER_SNAP_TOLERANCE: f64 = 1e-9;

/// `num / den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `f(d) = c`
    Constant(Rational),
    /// `f(d) = a + b * d`
    Affine { a: Rational, b: Rational },
    /// `f(d) = c * d^e`
    Power { c: Rational, e: Rational },
    /// `f(d) = values[d - 1]`, clamped to the last entry past the end.
    Table(Vec<Rational>),
}

/// A monotone non-decreasing, non-negative function on distances `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorFunction(Family);

fn non_negative(what: &str, x: &Rational) -> Result<()> {
    if x.is_negative() {
        Err(Error::InvalidFunction(format!(
            "{what} must be non-negative, got {}",
            fmt_rational(x)
        )))
    } else {
        Ok(())
    }
}

impl ErrorFunction {
    pub fn constant(c: Rational) -> Result<Self> {
        non_negative("constant", &c)?;
        Ok(ErrorFunction(Family::Constant(c)))
    }

    pub fn affine(a: Rational, b: Rational) -> Result<Self> {
        non_negative("affine offset", &a)?;
        non_negative("affine slope", &b)?;
        Ok(ErrorFunction(Family::Affine { a, b }))
    }

    pub fn power(c: Rational, e: Rational) -> Result<Self> {
        non_negative("power coefficient", &c)?;
        non_negative("power exponent", &e)?;
        if e.is_integer() && e.to_integer().to_u32().is_none() {
            return Err(Error::InvalidFunction("power exponent too large".into()));
        }
        if !e.is_integer() && e.to_f64().is_none_or(|x| !x.is_finite()) {
            return Err(Error::InvalidFunction("power exponent not representable".into()));
        }
        Ok(ErrorFunction(Family::Power { c, e }))
    }

    pub fn table(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidFunction("table needs at least one value".into()));
        }
        for v in &values {
            non_negative("table entry", v)?;
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidFunction("table entries must be non-decreasing".into()));
        }
        Ok(ErrorFunction(Family::Table(values)))
    }

    pub fn constant_int(c: u64) -> Self {
        ErrorFunction(Family::Constant(int(c)))
    }

    pub fn family(&self) -> &Family {
        &self.0
    }

    /// `f(d)`; `d = 0` is outside the domain.
    pub fn evaluate(&self, d: u64) -> Result<Rational> {
        if d == 0 {
            return Err(Error::ZeroDistance);
        }
        let dr = Rational::from_integer(BigInt::from(d));
        Ok(match &self.0 {
            Family::Constant(c) => c.clone(),
            Family::Affine { a, b } => a + b * dr,
            Family::Power { c, e } => {
                if c.is_zero() {
                    Rational::zero()
                } else if e.is_integer() {
                    let exp = e.to_integer().to_u32().expect("validated at construction");
                    c * Rational::from_integer(num_traits::pow(BigInt::from(d), exp as usize))
                } else {
                    power_approx(c, e, d)
                }
            }
            Family::Table(values) => {
                let idx = usize::try_from(d - 1).unwrap_or(usize::MAX).min(values.len() - 1);
                values[idx].clone()
            }
        })
    }
}

fn power_approx(c: &Rational, e: &Rational, d: u64) -> Rational {
    let y = c.to_f64().unwrap_or(f64::INFINITY) * (d as f64).powf(e.to_f64().unwrap_or(0.0));
    let nearest = y.round();
    if (y - nearest).abs() <= POWER_SNAP_TOLERANCE * nearest.abs().max(1.0) {
        if let Some(r) = Rational::from_float(nearest) {
            return r;
        }
    }
    Rational::from_float(y).unwrap_or_else(|| Rational::from_integer(BigInt::from(u64::MAX)))
}

/// Upper bound on spanner distances as a function of the original distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpannerBound {
    /// `f_alpha(d) * d + f_beta(d)`
    Linear { alpha: ErrorFunction, beta: ErrorFunction },
    /// `f(d)`
    General(ErrorFunction),
}

impl SpannerBound {
    pub fn linear(alpha: ErrorFunction, beta: ErrorFunction) -> Self {
        SpannerBound::Linear { alpha, beta }
    }

    /// `linear(const:alpha; const:beta)`
    pub fn linear_const(alpha: u64, beta: u64) -> Self {
        SpannerBound::linear(ErrorFunction::constant_int(alpha), ErrorFunction::constant_int(beta))
    }

    pub fn general(f: ErrorFunction) -> Self {
        SpannerBound::General(f)
    }

    pub fn bound_at(&self, d: u64) -> Result<Rational> {
        match self {
            SpannerBound::Linear { alpha, beta } => {
                let dr = Rational::from_integer(BigInt::from(d));
                Ok(alpha.evaluate(d)? * dr + beta.evaluate(d)?)
            }
            SpannerBound::General(f) => f.evaluate(d),
        }
    }

    /// Bound at distance 1, i.e. `f_alpha(1) + f_beta(1)` or `f(1)`.
    pub fn threshold(&self) -> Rational {
        self.bound_at(1).expect("d = 1 is in the domain")
    }

    /// Largest integer distance allowed at original distance `d`.
    pub fn cap(&self, d: u64) -> Result<u64> {
        Ok(floor_u64(&self.bound_at(d)?))
    }
}

/// `floor(x)` for non-negative `x`, saturating at `u64::MAX`.
pub fn floor_u64(x: &Rational) -> u64 {
    let f = x.floor().to_integer();
    if f.is_negative() {
        0
    } else {
        f.to_u64().unwrap_or(u64::MAX)
    }
}

pub(crate) fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `<int>`, `<int>/<int>` or `<int>.<digits>` exactly.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if let Some((num, den)) = text.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(format!("malformed fraction `{text}`"));
        }
        let den: BigInt = den.parse().map_err(|e| format!("{e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        let num: BigInt = num.parse().map_err(|e| format!("{e}"))?;
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if !(digits(whole) || whole.is_empty()) || !digits(frac) {
            return Err(format!("malformed decimal `{text}`"));
        }
        let whole: BigInt = if whole.is_empty() {
            BigInt::zero()
        } else {
            whole.parse().map_err(|e| format!("{e}"))?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|e| format!("{e}"))?;
        return Ok(Rational::new(whole * &scale + frac, scale));
    }
    if !digits(text) {
        return Err(format!("malformed number `{text}`"));
    }
    Ok(Rational::from_integer(text.parse().map_err(|e| format!("{e}"))?))
}

impl fmt::Display for ErrorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Family::Constant(c) => write!(f, "const:{}", fmt_rational(c)),
            Family::Affine { a, b } => write!(f, "affine:{}:{}", fmt_rational(a), fmt_rational(b)),
            Family::Power { c, e } => write!(f, "power:{}:{}", fmt_rational(c), fmt_rational(e)),
            Family::Table(values) => {
                let parts: Vec<String> = values.iter().map(fmt_rational).collect();
                write!(f, "table:{}", parts.join(","))
            }
        }
    }
}

impl fmt::Display for SpannerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpannerBound::Linear { alpha, beta } => write!(f, "linear({alpha};{beta})"),
            SpannerBound::General(g) => write!(f, "general({g})"),
        }
    }
}

impl FromStr for ErrorFunction {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let syntax = |reason: String| Error::BoundSyntax {
            spec: spec.to_string(),
            reason,
        };
        let (kind, rest) = spec
            .trim()
            .split_once(':')
            .ok_or_else(|| syntax("expected `<family>:<parameters>`".into()))?;
        let params: Vec<&str> = match kind {
            "table" => rest.split(',').collect(),
            _ => rest.split(':').collect(),
        };
        let values = params
            .iter()
            .map(|p| parse_rational(p))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(syntax)?;
        let count = values.len();
        let arity = |k: usize| {
            if count == k {
                Ok(())
            } else {
                Err(syntax(format!("`{kind}` takes {k} parameter(s), got {count}")))
            }
        };
        let mut values = values.into_iter();
        match kind {
            "const" => {
                arity(1)?;
                ErrorFunction::constant(values.next().unwrap())
            }
            "affine" => {
                arity(2)?;
                ErrorFunction::affine(values.next().unwrap(), values.next().unwrap())
            }
            "power" => {
                arity(2)?;
                ErrorFunction::power(values.next().unwrap(), values.next().unwrap())
            }
            "table" => ErrorFunction::table(values.collect()),
            other => Err(syntax(format!("unknown function family `{other}`"))),
        }
    }
}

impl FromStr for SpannerBound {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let syntax = |reason: &str| Error::BoundSyntax {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let inner = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        if let Some(body) = inner("linear") {
            let (a, b) = body
                .split_once(';')
                .ok_or_else(|| syntax("linear bound needs `linear(<f_alpha>;<f_beta>)`"))?;
            Ok(SpannerBound::linear(a.parse()?, b.parse()?))
        } else if let Some(body) = inner("general") {
            Ok(SpannerBound::general(body.parse()?))
        } else {
            Err(syntax("expected `linear(...)` or `general(...)`"))
        }
    }
}
