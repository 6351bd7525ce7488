//! Multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Values are kept in normal form: terms sorted by exponent vector
//! (lexicographically, ascending), no zero coefficients, so structural
//! equality is mathematical equality and the derived `Ord`/`Hash` are
//! canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            LaurentPoly { nvars, terms: vec![(exps, c)] }
        }
    }

    /// Sums the given terms and normalises.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: BTreeMap<Exponents, BigInt>) -> Self {
        LaurentPoly { nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&a| a == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in normal-form order.
    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut acc: BTreeMap<Exponents, BigInt> = self.terms.iter().cloned().collect();
        for (e, c) in &other.terms {
            *acc.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_map(self.nvars, acc))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(self.nvars, acc))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut out = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars, "shift length");
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, s)| a + s).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms. Zero for the zero polynomial.
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for (e, _) in &self.terms {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Exact quotient `self / den` in the Laurent polynomial ring over the
    /// integers. The monomial content of `den` is factored out and the rest
    /// is removed by multivariate division in lex order; a nonzero remainder
    /// is [`Error::NotDivisible`].
    pub fn exact_divide(&self, den: &Self) -> Result<Self> {
        self.same_vars(den)?;
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let den_min = den.min_exponents();
        let num_min = self.min_exponents();
        let d0 = den.shift(&neg(&den_min));
        let mut rest: BTreeMap<Exponents, BigInt> =
            self.shift(&neg(&num_min)).terms.into_iter().collect();

        let (lead_e, lead_c) = d0.terms.last().expect("nonzero divisor").clone();
        let mut quotient: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        while let Some((e, c)) = rest.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let qe: Exponents = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            for (de, dc) in &d0.terms {
                let te: Exponents = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let slot = rest.entry(te.clone()).or_insert_with(BigInt::zero);
                *slot -= dc * &qc;
                if slot.is_zero() {
                    rest.remove(&te);
                }
            }
            quotient.insert(qe, qc);
        }
        let back: Vec<i32> = num_min.iter().zip(&den_min).map(|(a, b)| a - b).collect();
        Ok(Self::from_map(self.nvars, quotient).shift(&back))
    }

    /// `d_i = max(0, -min exponent of x_i)`: the exponent vector of the
    /// monomial denominator when the polynomial is written in lowest terms.
    pub fn denominator_vector(&self) -> Result<Vec<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.min_exponents().into_iter().map(|m| i64::from((-m).max(0))).collect())
    }

    /// True iff every stored coefficient is positive.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_positive())
    }

    /// Exact evaluation at nonzero rational values.
    pub fn substitute(&self, values: &[BigRational]) -> Result<BigRational> {
        if values.len() != self.nvars {
            return Err(Error::LengthMismatch { got: values.len(), n: self.nvars });
        }
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(Error::SubstitutionAtZero(i + 1));
        }
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, &a) in values.iter().zip(e) {
                if a != 0 {
                    t *= v.pow(a);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Fraction rendering `numerator/denominator` with a monomial
    /// denominator, e.g. `(x2+x3)/x1`. Numerator terms are ordered by total
    /// degree, then by descending exponent vector.
    pub fn to_fraction_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let d: Vec<i32> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        let num = self.shift(&d);
        let mut terms: Vec<&(Exponents, BigInt)> = num.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i64 = a.0.iter().map(|&x| i64::from(x)).sum();
            let db: i64 = b.0.iter().map(|&x| i64::from(x)).sum();
            da.cmp(&db).then_with(|| b.0.cmp(&a.0))
        });
        let mut numerator = String::new();
        for (idx, (e, c)) in terms.iter().enumerate() {
            let t = render_term(e, c, "*");
            if idx > 0 && !t.starts_with('-') {
                numerator.push('+');
            }
            numerator.push_str(&t);
        }
        let den_factors = render_factors(&d, "*");
        if den_factors.is_empty() {
            return numerator;
        }
        let numerator = if terms.len() > 1 || numerator.starts_with('-') {
            format!("({numerator})")
        } else {
            numerator
        };
        if d.iter().filter(|&&a| a != 0).count() > 1 {
            format!("{numerator}/({den_factors})")
        } else {
            format!("{numerator}/{den_factors}")
        }
    }

    /// Parses the canonical text form, and more generally any expression
    /// built from integers, `x1..xn`, `+ - * /`, `^` with integer exponents
    /// and parentheses. Division must be exact.
    pub fn parse(nvars: usize, text: &str) -> Result<Self> {
        let mut p = Parser { nvars, src: text.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }
}

fn neg(v: &[i32]) -> Vec<i32> {
    v.iter().map(|x| -x).collect()
}

fn render_factors(e: &[i32], sep: &str) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
        .collect::<Vec<_>>()
        .join(sep)
}

fn render_term(e: &[i32], c: &BigInt, sep: &str) -> String {
    let factors = render_factors(e, sep);
    if factors.is_empty() {
        c.to_string()
    } else if c.is_one() {
        factors
    } else if *c == -BigInt::one() {
        format!("-{factors}")
    } else {
        format!("{c}*{factors}")
    }
}

/// Canonical text form: terms in normal-form order joined by ` + `, each
/// `c*x1^a1*...` with unit factors omitted.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| render_term(e, c, "*")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

// Operator forms panic on a variable-count mismatch; use the `checked_*`
// methods where the operands come from outside.
impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent polynomials over different variables")
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent polynomials over different variables")
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent polynomials over different variables")
    }
}

struct Parser<'a> {
    nvars: usize,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::LaurentParse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = if op == b'*' { &acc * &f } else { acc.exact_divide(&f)? };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.primary()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let k = self.signed_int()?;
                    power(&base, k).ok_or_else(|| self.error("negative power of a non-monomial"))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn primary(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.digits()?;
                let i: usize = i.parse().map_err(|_| self.error("bad variable index"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.error(&format!("variable x{i} out of range")));
                }
                Ok(LaurentPoly::var(self.nvars, i - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let c: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(LaurentPoly::constant(self.nvars, c))
            }
            _ => Err(self.error("unexpected token")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn signed_int(&mut self) -> Result<i32> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'(') => {
                self.pos += 1;
                let k = self.signed_int()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                return Ok(k);
            }
            _ => false,
        };
        let d = self.digits()?;
        let k: i32 = d.parse().map_err(|_| self.error("exponent too large"))?;
        Ok(if negative { -k } else { k })
    }
}

fn power(base: &LaurentPoly, k: i32) -> Option<LaurentPoly> {
    if k >= 0 {
        return Some(base.pow(k as u32));
    }
    if !base.is_monomial() {
        return None;
    }
    let (e, c) = &base.terms[0];
    if !c.abs().is_one() {
        return None;
    }
    let inv = LaurentPoly::monomial(neg(e), c.clone());
    Some(inv.pow(k.unsigned_abs()))
}
