//! Non-Archimedean scalar arithmetic: truncated Laurent series in a fixed
//! infinitesimal generator `ε`, together with its complexification.
//!
//! A value is `Σ c_k ε^k` with integer exponents `k ∈ [-K, K]`; terms outside
//! the window are discarded silently (truncation). The ordering is
//! lexicographic on coefficients starting from the smallest exponent, which
//! makes `ε` positive, smaller than every positive real, and `ε⁻¹` larger
//! than every real.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Default truncation order `K`: exponents are kept in `[-K, K]`.
pub const DEFAULT_TRUNCATION_ORDER: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
    /// Leading coefficient underflowed or overflowed during inversion.
    NonInvertibleLeadingTerm,
    Parse(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::NonInvertibleLeadingTerm => {
                write!(f, "leading coefficient is not invertible in f64")
            }
            ScalarError::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// Standard part of a scalar: the unique real infinitely close to a finite
/// value, `±∞` for infinite values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StandardPart {
    Finite(f64),
    PosInfinite,
    NegInfinite,
}

impl StandardPart {
    pub fn as_f64(self) -> Option<f64> {
        match self {
            StandardPart::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, StandardPart::Finite(_))
    }
}

impl fmt::Display for StandardPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardPart::Finite(x) => write!(f, "{x}"),
            StandardPart::PosInfinite => write!(f, "+inf"),
            StandardPart::NegInfinite => write!(f, "-inf"),
        }
    }
}

/// Size class of a scalar. Every infinitesimal is also finite, so the class
/// is the finest of the three labels; use the predicates for the coarse ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Infinitesimal,
    Finite,
    Infinite,
}

impl Classification {
    pub fn is_infinitesimal(self) -> bool {
        self == Classification::Infinitesimal
    }

    /// Finite in the inclusive sense: infinitesimals are finite.
    pub fn is_finite(self) -> bool {
        self != Classification::Infinite
    }

    pub fn is_infinite(self) -> bool {
        self == Classification::Infinite
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Infinitesimal => "infinitesimal",
            Classification::Finite => "finite",
            Classification::Infinite => "infinite",
        };
        write!(f, "{s}")
    }
}

/// Truncated Laurent series in `ε` with `f64` coefficients.
///
/// Canonical form: no stored zero coefficients, all exponents in
/// `[-order, order]`. Comparisons use the exact sign of stored coefficients;
/// catastrophic cancellation between nearly equal values can therefore
/// misorder them, which is the price of floating coefficients.
#[derive(Debug, Clone)]
pub struct EuclideanScalar {
    coeffs: BTreeMap<i32, f64>,
    order: i32,
}

impl EuclideanScalar {
    pub fn zero() -> Self {
        Self::zero_with_order(DEFAULT_TRUNCATION_ORDER)
    }

    pub fn zero_with_order(order: i32) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        EuclideanScalar {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn one() -> Self {
        Self::from_real(1.0)
    }

    pub fn from_real(c: f64) -> Self {
        Self::term(c, 0)
    }

    /// The distinguished infinitesimal generator.
    pub fn epsilon() -> Self {
        Self::term(1.0, 1)
    }

    /// `ε⁻¹`, the canonical positive infinite element.
    pub fn epsilon_inv() -> Self {
        Self::term(1.0, -1)
    }

    /// Single term `c·ε^k`.
    pub fn term(c: f64, k: i32) -> Self {
        let mut s = Self::zero();
        if c != 0.0 && k.abs() <= s.order {
            s.coeffs.insert(k, c);
        }
        s
    }

    pub fn term_with_order(c: f64, k: i32, order: i32) -> Self {
        let mut s = Self::zero_with_order(order);
        if c != 0.0 && k.abs() <= order {
            s.coeffs.insert(k, c);
        }
        s
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `ε^k` (0 when absent).
    pub fn coeff(&self, k: i32) -> f64 {
        self.coeffs.get(&k).copied().unwrap_or(0.0)
    }

    /// Smallest stored exponent, `None` for zero.
    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    fn insert_term(&mut self, k: i32, c: f64) {
        if k.abs() > self.order {
            return; // silent truncation outside the window
        }
        let entry = self.coeffs.entry(k).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn classify(&self) -> Classification {
        match self.min_exponent() {
            None => Classification::Infinitesimal, // zero
            Some(k) if k > 0 => Classification::Infinitesimal,
            Some(k) if k < 0 => Classification::Infinite,
            _ => Classification::Finite,
        }
    }

    pub fn standard_part(&self) -> StandardPart {
        match self.min_exponent() {
            Some(k) if k < 0 => {
                if self.coeff(k) > 0.0 {
                    StandardPart::PosInfinite
                } else {
                    StandardPart::NegInfinite
                }
            }
            _ => StandardPart::Finite(self.coeff(0)),
        }
    }

    /// Sign of the value: sign of the coefficient at the smallest exponent.
    pub fn sign(&self) -> i8 {
        match self.min_exponent() {
            None => 0,
            Some(k) => {
                if self.coeff(k) > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn infinitely_close(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).classify().is_infinitesimal()
    }

    /// Multiplicative inverse via leading-term factorization and series
    /// inversion of the relative part, to the deepest order the truncation
    /// window admits.
    pub fn try_recip(&self) -> Result<Self, ScalarError> {
        let m = self.min_exponent().ok_or(ScalarError::DivisionByZero)?;
        let lead = self.coeff(m);
        let inv_lead = 1.0 / lead;
        if !inv_lead.is_finite() || inv_lead == 0.0 {
            return Err(ScalarError::NonInvertibleLeadingTerm);
        }
        // Normalized series c_j = a_{m+j} / a_m, c_0 = 1; reciprocal r
        // satisfies r_0 = 1, r_j = -Σ_{i=1..j} c_i r_{j-i}.
        let rel_order = (self.order + m).max(0) as usize;
        let mut c = vec![0.0; rel_order + 1];
        for (k, a) in self.terms() {
            let j = (k - m) as usize;
            if j <= rel_order {
                c[j] = a * inv_lead;
            }
        }
        let mut r = vec![0.0; rel_order + 1];
        r[0] = 1.0;
        for j in 1..=rel_order {
            let mut acc = 0.0;
            for i in 1..=j {
                acc += c[i] * r[j - i];
            }
            r[j] = -acc;
        }
        let mut out = Self::zero_with_order(self.order);
        for (j, rj) in r.iter().enumerate() {
            if *rj != 0.0 {
                out.insert_term(-m + j as i32, rj * inv_lead);
            }
        }
        Ok(out)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.try_recip()?)
    }

    /// Promote a plain float to the `ε⁰` coefficient.
    pub fn promote(x: f64) -> Self {
        Self::from_real(x)
    }
}

impl PartialEq for EuclideanScalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for EuclideanScalar {}

impl PartialOrd for EuclideanScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EuclideanScalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let d = self.clone() - other.clone();
        match d.sign() {
            0 => std::cmp::Ordering::Equal,
            s if s > 0 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Less,
        }
    }
}

impl std::ops::Neg for EuclideanScalar {
    type Output = EuclideanScalar;
    fn neg(mut self) -> Self {
        for c in self.coeffs.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl std::ops::Neg for &EuclideanScalar {
    type Output = EuclideanScalar;
    fn neg(self) -> EuclideanScalar {
        -self.clone()
    }
}

impl std::ops::Add for EuclideanScalar {
    type Output = EuclideanScalar;
    fn add(self, rhs: Self) -> Self {
        let mut out = Self::zero_with_order(self.order.min(rhs.order));
        for (k, c) in self.terms() {
            out.insert_term(k, c);
        }
        for (k, c) in rhs.terms() {
            out.insert_term(k, c);
        }
        out
    }
}

impl std::ops::Sub for EuclideanScalar {
    type Output = EuclideanScalar;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl std::ops::Mul for EuclideanScalar {
    type Output = EuclideanScalar;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero_with_order(self.order.min(rhs.order));
        for (ka, ca) in self.terms() {
            for (kb, cb) in rhs.terms() {
                out.insert_term(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl std::ops::Add<&EuclideanScalar> for &EuclideanScalar {
    type Output = EuclideanScalar;
    fn add(self, rhs: &EuclideanScalar) -> EuclideanScalar {
        self.clone() + rhs.clone()
    }
}

impl std::ops::Sub<&EuclideanScalar> for &EuclideanScalar {
    type Output = EuclideanScalar;
    fn sub(self, rhs: &EuclideanScalar) -> EuclideanScalar {
        self.clone() - rhs.clone()
    }
}

impl std::ops::Mul<&EuclideanScalar> for &EuclideanScalar {
    type Output = EuclideanScalar;
    fn mul(self, rhs: &EuclideanScalar) -> EuclideanScalar {
        self.clone() * rhs.clone()
    }
}

impl std::ops::Mul<f64> for EuclideanScalar {
    type Output = EuclideanScalar;
    fn mul(self, rhs: f64) -> EuclideanScalar {
        self * EuclideanScalar::from_real(rhs)
    }
}

impl fmt::Display for EuclideanScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag == 1.0 {
                        write!(f, "ε")?;
                    } else {
                        write!(f, "{mag}ε")?;
                    }
                }
                _ => {
                    if mag == 1.0 {
                        write!(f, "ε^{k}")?;
                    } else {
                        write!(f, "{mag}ε^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for EuclideanScalar {
    type Err = ScalarError;

    /// Parses the rendering format, e.g. `"2ε^-1 + 1 + 0.5ε^2"`. `eps` is
    /// accepted as an ASCII alias for `ε`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let normalized = s.replace("eps", "ε");
        let text = normalized.trim();
        if text.is_empty() {
            return Err(ScalarError::Parse("empty input".into()));
        }
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        // split into signed terms
        let mut terms: Vec<(f64, String)> = Vec::new();
        let mut sign = 1.0;
        let mut cur = String::new();
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    // '-' inside an exponent like ε^-2 belongs to the term
                    if cur.ends_with('^') {
                        cur.push(ch);
                    } else {
                        if !cur.trim().is_empty() {
                            terms.push((sign, cur.trim().to_string()));
                        }
                        cur = String::new();
                        sign = if ch == '-' { -1.0 } else { 1.0 };
                    }
                }
                _ => cur.push(ch),
            }
        }
        if !cur.trim().is_empty() {
            terms.push((sign, cur.trim().to_string()));
        }
        for (sgn, term) in terms {
            let (coeff, exp) = parse_term(&term)?;
            out.insert_term(exp, sgn * coeff);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(f64, i32), ScalarError> {
    let bad = |t: &str| ScalarError::Parse(format!("bad term `{t}`"));
    if let Some(idx) = term.find('ε') {
        let coeff_str = term[..idx].trim();
        let coeff = if coeff_str.is_empty() {
            1.0
        } else {
            coeff_str.parse::<f64>().map_err(|_| bad(term))?
        };
        let rest = term[idx + 'ε'.len_utf8()..].trim();
        let exp = if rest.is_empty() {
            1
        } else if let Some(e) = rest.strip_prefix('^') {
            e.trim().parse::<i32>().map_err(|_| bad(term))?
        } else {
            return Err(bad(term));
        };
        Ok((coeff, exp))
    } else {
        Ok((term.trim().parse::<f64>().map_err(|_| bad(term))?, 0))
    }
}

/// Complexification: `re + i·im` with both parts truncated Laurent series.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEuclidean {
    pub re: EuclideanScalar,
    pub im: EuclideanScalar,
}

impl ComplexEuclidean {
    pub fn zero() -> Self {
        ComplexEuclidean {
            re: EuclideanScalar::zero(),
            im: EuclideanScalar::zero(),
        }
    }

    pub fn from_real(re: EuclideanScalar) -> Self {
        ComplexEuclidean {
            re,
            im: EuclideanScalar::zero(),
        }
    }

    pub fn from_f64(re: f64) -> Self {
        Self::from_real(EuclideanScalar::from_real(re))
    }

    pub fn from_parts_f64(re: f64, im: f64) -> Self {
        ComplexEuclidean {
            re: EuclideanScalar::from_real(re),
            im: EuclideanScalar::from_real(im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexEuclidean {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> EuclideanScalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Infinite if either component is infinite; infinitesimal if both are.
    pub fn classify(&self) -> Classification {
        let (a, b) = (self.re.classify(), self.im.classify());
        if a.is_infinite() || b.is_infinite() {
            Classification::Infinite
        } else if a.is_infinitesimal() && b.is_infinitesimal() {
            Classification::Infinitesimal
        } else {
            Classification::Finite
        }
    }

    pub fn infinitely_close(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).classify().is_infinitesimal()
    }

    pub fn standard_parts(&self) -> (StandardPart, StandardPart) {
        (self.re.standard_part(), self.im.standard_part())
    }

    pub fn scale_real(&self, s: &EuclideanScalar) -> Self {
        ComplexEuclidean {
            re: &self.re * s,
            im: &self.im * s,
        }
    }
}

impl std::ops::Add for ComplexEuclidean {
    type Output = ComplexEuclidean;
    fn add(self, rhs: Self) -> Self {
        ComplexEuclidean {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl std::ops::Sub for ComplexEuclidean {
    type Output = ComplexEuclidean;
    fn sub(self, rhs: Self) -> Self {
        ComplexEuclidean {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl std::ops::Neg for ComplexEuclidean {
    type Output = ComplexEuclidean;
    fn neg(self) -> Self {
        ComplexEuclidean {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl std::ops::Mul for ComplexEuclidean {
    type Output = ComplexEuclidean;
    fn mul(self, rhs: Self) -> Self {
        ComplexEuclidean {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl fmt::Display for ComplexEuclidean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}
