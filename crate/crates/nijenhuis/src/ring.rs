//! Exact coefficient arithmetic: arbitrary-precision rationals, sparse
//! multivariate polynomials and total-degree-truncated power series.
//!
//! Every value in this crate is built from [`Elem`]: a sparse map from
//! exponent vectors to nonzero rational coefficients, tagged with a [`Mode`]
//! that says whether it is an honest polynomial or a power series known up
//! to some total degree. All identities downstream are decided by exact
//! equality with zero, never by tolerance.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational. `num_rational` keeps the canonical form
/// (reduced, positive denominator) that the rest of the crate relies on.
pub type Rat = num_rational::BigRational;

/// Integer rational constant.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational constant `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Coefficient-ring flavour of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Exact multivariate polynomial.
    Poly,
    /// Power series truncated at the given total degree (inclusive).
    Series(u32),
}

impl Mode {
    pub fn truncation_order(&self) -> Option<u32> {
        match self {
            Mode::Poly => None,
            Mode::Series(n) => Some(*n),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Poly => write!(f, "poly"),
            Mode::Series(n) => write!(f, "series({n})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum RingError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("variable index {0} out of range for {1} variables")]
    VarOutOfRange(usize, usize),
    #[error("exp() requires series mode")]
    ExpInPolyMode,
    #[error("exp() argument has nonzero constant term")]
    ExpNonzeroConstant,
    #[error("point length {0} does not match {1} variables")]
    PointLength(usize, usize),
    #[error("substitution into a series requires series assignments with zero constant term")]
    BadSeriesSubstitution,
    #[error("substitution arity mismatch: {0} images for {1} variables")]
    SubstitutionArity(usize, usize),
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("division by zero element")]
    DivisionByZero,
    #[error("element depends on variable {0}, which the mapping removes")]
    VariableNotEliminable(usize),
}

/// Element of the coefficient ring: polynomial or truncated series over Q.
///
/// Stored sparsely as exponent vector -> nonzero coefficient. The map never
/// holds zero coefficients, exponent vectors always have length `num_vars`,
/// and in series mode every stored monomial has total degree <= N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    num_vars: usize,
    mode: Mode,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Elem {
    pub fn zero(num_vars: usize, mode: Mode) -> Self {
        Elem { num_vars, mode, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, mode: Mode, c: Rat) -> Self {
        let mut e = Elem::zero(num_vars, mode);
        if !c.is_zero() {
            e.terms.insert(vec![0; num_vars], c);
        }
        e
    }

    pub fn one(num_vars: usize, mode: Mode) -> Self {
        Elem::constant(num_vars, mode, Rat::one())
    }

    pub fn int(num_vars: usize, mode: Mode, n: i64) -> Self {
        Elem::constant(num_vars, mode, rat(n))
    }

    /// The variable `x_var`. In series mode with N = 0 this truncates to zero.
    pub fn var(num_vars: usize, mode: Mode, var: usize) -> Self {
        assert!(var < num_vars, "variable index out of range");
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        Elem::monomial(num_vars, mode, exps, Rat::one())
    }

    /// Single term `c * x^exps`, truncated away if it exceeds the series order.
    pub fn monomial(num_vars: usize, mode: Mode, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut e = Elem::zero(num_vars, mode);
        if !c.is_zero() && fits(&exps, mode) {
            e.terms.insert(exps, c);
        }
        e
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.num_vars])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree, or None for the zero element.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Checked addition: requires identical variable count and mode.
    pub fn try_add(&self, other: &Elem) -> Result<Elem, RingError> {
        self.check_compatible(other)?;
        Ok(self.add_impl(other, false))
    }

    /// Checked subtraction: requires identical variable count and mode.
    pub fn try_sub(&self, other: &Elem) -> Result<Elem, RingError> {
        self.check_compatible(other)?;
        Ok(self.add_impl(other, true))
    }

    /// Checked multiplication: requires identical variable count and mode.
    pub fn try_mul(&self, other: &Elem) -> Result<Elem, RingError> {
        self.check_compatible(other)?;
        Ok(self.mul_impl(other))
    }

    fn check_compatible(&self, other: &Elem) -> Result<(), RingError> {
        if self.num_vars != other.num_vars {
            return Err(RingError::VarMismatch(self.num_vars, other.num_vars));
        }
        if self.mode != other.mode {
            return Err(RingError::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    /// Joint mode of two operands for the lenient operators: series orders are
    /// harmonized to the minimum (a series known to order N is known to any
    /// lower order). Poly/series mixes and variable mismatches panic.
    fn joint_mode(&self, other: &Elem) -> Mode {
        assert_eq!(
            self.num_vars, other.num_vars,
            "variable count mismatch: {} vs {}",
            self.num_vars, other.num_vars
        );
        match (self.mode, other.mode) {
            (Mode::Poly, Mode::Poly) => Mode::Poly,
            (Mode::Series(a), Mode::Series(b)) => Mode::Series(a.min(b)),
            (a, b) => panic!("cannot mix poly and series operands: {a} vs {b}"),
        }
    }

    fn add_impl(&self, other: &Elem, negate_rhs: bool) -> Elem {
        let mode = self.joint_mode(other);
        let mut out = Elem::zero(self.num_vars, mode);
        for (e, c) in &self.terms {
            if fits(e, mode) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        for (e, c) in &other.terms {
            if !fits(e, mode) {
                continue;
            }
            let c = if negate_rhs { -c.clone() } else { c.clone() };
            match out.terms.get_mut(e) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        out.terms.remove(e);
                    }
                }
                None => {
                    out.terms.insert(e.clone(), c);
                }
            }
        }
        out
    }

    fn mul_impl(&self, other: &Elem) -> Elem {
        let mode = self.joint_mode(other);
        let mut out = Elem::zero(self.num_vars, mode);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !fits(&e, mode) {
                    continue;
                }
                let c = ca * cb;
                match out.terms.get_mut(&e) {
                    Some(acc) => {
                        *acc += c;
                        if acc.is_zero() {
                            out.terms.remove(&e);
                        }
                    }
                    None => {
                        out.terms.insert(e, c);
                    }
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Elem {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Elem {
        if c.is_zero() {
            return Elem::zero(self.num_vars, self.mode);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Elem {
        let mut acc = Elem::one(self.num_vars, self.mode);
        for _ in 0..exp {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Formal partial derivative. In series mode the result is only known to
    /// order N-1, and the output records that.
    pub fn partial_derivative(&self, var: usize) -> Result<Elem, RingError> {
        if var >= self.num_vars {
            return Err(RingError::VarOutOfRange(var, self.num_vars));
        }
        let mode = match self.mode {
            Mode::Poly => Mode::Poly,
            Mode::Series(n) => Mode::Series(n.saturating_sub(1)),
        };
        let mut out = Elem::zero(self.num_vars, mode);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            if fits(&ne, mode) {
                out.terms.insert(ne, c * rat(i64::from(e[var])));
            }
        }
        Ok(out)
    }

    /// Convert a polynomial to a series, dropping terms above the order.
    pub fn to_series(&self, order: u32) -> Elem {
        let mode = Mode::Series(order);
        let mut out = Elem::zero(self.num_vars, mode);
        for (e, c) in &self.terms {
            if fits(e, mode) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterpret a series as the polynomial given by its stored terms.
    pub fn to_poly(&self) -> Elem {
        Elem { num_vars: self.num_vars, mode: Mode::Poly, terms: self.terms.clone() }
    }

    /// Lower a series order (no-op for polynomials or larger orders).
    pub fn truncate_to(&self, order: u32) -> Elem {
        match self.mode {
            Mode::Poly => self.clone(),
            Mode::Series(n) if n <= order => self.clone(),
            Mode::Series(_) => {
                let mut out = self.to_series(order);
                out.mode = Mode::Series(order);
                out
            }
        }
    }

    /// Compose: replace variable `i` by `images[i]`. All images must live in
    /// one common ring, which becomes the ring of the result. Composing a
    /// series requires series images with zero constant term; composing a
    /// polynomial is unrestricted (constant shifts are exact).
    pub fn compose(&self, images: &[Elem]) -> Result<Elem, RingError> {
        if images.len() != self.num_vars {
            return Err(RingError::SubstitutionArity(images.len(), self.num_vars));
        }
        let (tnv, tmode) = match images.first() {
            Some(im) => (im.num_vars, im.mode),
            // 0-variable element: it is a constant
            None => (0, self.mode),
        };
        for im in images {
            if im.num_vars != tnv {
                return Err(RingError::VarMismatch(im.num_vars, tnv));
            }
            if im.mode != tmode {
                return Err(RingError::ModeMismatch(im.mode, tmode));
            }
        }
        if matches!(self.mode, Mode::Series(_)) {
            match tmode {
                Mode::Poly => return Err(RingError::BadSeriesSubstitution),
                Mode::Series(_) => {
                    for (idx, im) in images.iter().enumerate() {
                        if self.uses_var(idx) && !im.constant_term().is_zero() {
                            return Err(RingError::BadSeriesSubstitution);
                        }
                    }
                }
            }
        }
        let mut out = Elem::zero(tnv, tmode);
        for (e, c) in &self.terms {
            let mut term = Elem::constant(tnv, tmode, c.clone());
            for (idx, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul_impl(&images[idx].pow(exp));
                }
            }
            out = out.add_impl(&term, false);
        }
        Ok(out)
    }

    /// Substitute selected variables, leaving the others in place.
    pub fn substitute(&self, assignments: &[(usize, Elem)]) -> Result<Elem, RingError> {
        let mut images: Vec<Elem> = (0..self.num_vars)
            .map(|i| Elem::var(self.num_vars, self.mode, i))
            .collect();
        for (idx, im) in assignments {
            if *idx >= self.num_vars {
                return Err(RingError::VarOutOfRange(*idx, self.num_vars));
            }
            images[*idx] = im.clone();
        }
        self.compose(&images)
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, RingError> {
        if point.len() != self.num_vars {
            return Err(RingError::PointLength(point.len(), self.num_vars));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (idx, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    v *= &point[idx];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Truncated exponential: sum of p^m / m! for m = 0..=N. The argument
    /// must be a series with zero constant term.
    pub fn series_exp(&self) -> Result<Elem, RingError> {
        let order = match self.mode {
            Mode::Poly => return Err(RingError::ExpInPolyMode),
            Mode::Series(n) => n,
        };
        if !self.constant_term().is_zero() {
            return Err(RingError::ExpNonzeroConstant);
        }
        let mut acc = Elem::one(self.num_vars, self.mode);
        let mut term = Elem::one(self.num_vars, self.mode);
        for m in 1..=order {
            term = term.mul_impl(self).scale(&ratio(1, i64::from(m)));
            if term.is_zero() {
                break;
            }
            acc = acc.add_impl(&term, false);
        }
        Ok(acc)
    }

    /// Exact polynomial division; errors unless the divisor divides exactly.
    /// Polynomial mode only.
    pub fn try_div_exact(&self, divisor: &Elem) -> Result<Elem, RingError> {
        self.check_compatible(divisor)?;
        if divisor.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if !matches!(self.mode, Mode::Poly) {
            return Err(RingError::NotDivisible);
        }
        // Division with remainder by a single divisor; remainder zero iff
        // the division is exact (single-divisor division is canonical).
        let lead = |p: &Elem| -> (Vec<u32>, Rat) {
            let (e, c) = p
                .terms
                .iter()
                .max_by(|a, b| cmp_grlex(a.0, b.0))
                .expect("nonzero");
            (e.clone(), c.clone())
        };
        let (dl_e, dl_c) = lead(divisor);
        let mut rem = self.clone();
        let mut quot = Elem::zero(self.num_vars, self.mode);
        loop {
            if rem.is_zero() {
                return Ok(quot);
            }
            let (re, rc) = lead(&rem);
            if !dl_e.iter().zip(&re).all(|(d, r)| d <= r) {
                return Err(RingError::NotDivisible);
            }
            let qe: Vec<u32> = re.iter().zip(&dl_e).map(|(r, d)| r - d).collect();
            let qc = rc / &dl_c;
            let qt = Elem::monomial(self.num_vars, self.mode, qe, qc);
            rem = rem.add_impl(&qt.mul_impl(divisor), true);
            quot = quot.add_impl(&qt, false);
        }
    }

    /// Re-index variables: `map[i]` is the image index of old variable `i`
    /// in a ring of `new_num_vars` variables, or None if the element must
    /// not depend on it.
    pub fn map_vars(&self, new_num_vars: usize, map: &[Option<usize>]) -> Result<Elem, RingError> {
        assert_eq!(map.len(), self.num_vars);
        let mut out = Elem::zero(new_num_vars, self.mode);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; new_num_vars];
            for (idx, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match map[idx] {
                    Some(t) => {
                        assert!(t < new_num_vars);
                        ne[t] += exp;
                    }
                    None => return Err(RingError::VariableNotEliminable(idx)),
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Canonical text rendering, parseable back by the expression parser.
    /// Positive terms come first so that a leading `-` never occurs except
    /// in the all-negative case, which is wrapped as `-(...)`.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.num_vars);
        if self.is_zero() {
            return "0".to_string();
        }
        let term_str = |e: &[u32], c: &Rat| -> String {
            let mut factors: Vec<String> = Vec::new();
            let abs = c.abs();
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                let s = if abs.denom().is_one() {
                    format!("{}", abs.numer())
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                };
                factors.push(s);
            }
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], exp)),
                }
            }
            factors.join("*")
        };
        let mut ordered: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| cmp_grlex(b, a));
        let mut pos: Vec<String> = Vec::new();
        let mut neg: Vec<String> = Vec::new();
        for (e, c) in ordered {
            if c.is_positive() {
                pos.push(term_str(e, c));
            } else {
                neg.push(term_str(e, c));
            }
        }
        if pos.is_empty() {
            return format!("-({})", neg.join(" + "));
        }
        let mut s = pos.join(" + ");
        for t in &neg {
            s.push_str(" - ");
            s.push_str(t);
        }
        s
    }
}

fn fits(exps: &[u32], mode: Mode) -> bool {
    match mode {
        Mode::Poly => true,
        Mode::Series(n) => exps.iter().sum::<u32>() <= n,
    }
}

fn cmp_grlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl std::ops::$trait<&Elem> for &Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                self.$impl(rhs)
            }
        }
        impl std::ops::$trait<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$impl(&rhs)
            }
        }
        impl std::ops::$trait<&Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                (&self).$impl(rhs)
            }
        }
    };
}

impl Elem {
    fn add_op(&self, rhs: &Elem) -> Elem {
        self.add_impl(rhs, false)
    }
    fn sub_op(&self, rhs: &Elem) -> Elem {
        self.add_impl(rhs, true)
    }
    fn mul_op(&self, rhs: &Elem) -> Elem {
        self.mul_impl(rhs)
    }
}

binop!(Add, add, add_op);
binop!(Sub, sub, sub_op);
binop!(Mul, mul, mul_op);

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(self)
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(&self)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.num_vars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Elem {
        Elem::var(2, Mode::Poly, 0)
    }
    fn y() -> Elem {
        Elem::var(2, Mode::Poly, 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = (x() + y()) * (x() - y());
        let q = x().pow(2) - y().pow(2);
        assert_eq!(p, q);
    }

    #[test]
    fn additive_identity() {
        let p = x().pow(3) + y().scale(&ratio(5, 3));
        assert_eq!(Elem::zero(2, Mode::Poly) + p.clone(), p);
    }

    #[test]
    fn series_product_truncates() {
        // (1+x)(1-x+x^2) = 1+x^3, which truncates to 1 at order 2
        let one = Elem::one(1, Mode::Series(2));
        let xs = Elem::var(1, Mode::Series(2), 0);
        let a = one.clone() + xs.clone();
        let b = one.clone() - xs.clone() + xs.pow(2);
        assert_eq!(a * b, one);
    }

    #[test]
    fn partial_derivative_power_rule() {
        // d/dx (x^2 y) = 2xy
        let p = x().pow(2) * y();
        let d = p.partial_derivative(0).unwrap();
        assert_eq!(d, (x() * y()).scale(&rat(2)));
        // d/dy (x^2) = 0
        assert!(x().pow(2).partial_derivative(1).unwrap().is_zero());
        assert!(matches!(
            x().partial_derivative(5),
            Err(RingError::VarOutOfRange(5, 2))
        ));
    }

    #[test]
    fn substitution_binomial() {
        // x^2 with x -> y+1 gives y^2 + 2y + 1
        let p = x().pow(2);
        let im = y() + Elem::one(2, Mode::Poly);
        let r = p.substitute(&[(0, im)]).unwrap();
        let expect = y().pow(2) + y().scale(&rat(2)) + Elem::one(2, Mode::Poly);
        assert_eq!(r, expect);
    }

    #[test]
    fn substitution_identity() {
        let p = x().pow(2) * y() - y().pow(3).scale(&ratio(1, 2));
        assert_eq!(p.substitute(&[]).unwrap(), p);
    }

    #[test]
    fn series_exp_taylor() {
        let xs = Elem::var(1, Mode::Series(3), 0);
        let e = xs.series_exp().unwrap();
        let expect = Elem::one(1, Mode::Series(3))
            + xs.clone()
            + xs.pow(2).scale(&ratio(1, 2))
            + xs.pow(3).scale(&ratio(1, 6));
        assert_eq!(e, expect);
        assert_eq!(
            Elem::zero(1, Mode::Series(4)).series_exp().unwrap(),
            Elem::one(1, Mode::Series(4))
        );
    }

    #[test]
    fn series_exp_rejects_bad_input() {
        assert!(matches!(x().series_exp(), Err(RingError::ExpInPolyMode)));
        let c = Elem::one(1, Mode::Series(3));
        assert!(matches!(c.series_exp(), Err(RingError::ExpNonzeroConstant)));
    }

    #[test]
    fn exp_homomorphism() {
        let xs = Elem::var(1, Mode::Series(4), 0);
        let prod = xs.series_exp().unwrap() * xs.neg().series_exp().unwrap();
        assert_eq!(prod, Elem::one(1, Mode::Series(4)));
    }

    #[test]
    fn evaluate_point() {
        // x^2 + y at (2,3) -> 7
        let p = x().pow(2) + y();
        assert_eq!(p.evaluate(&[rat(2), rat(3)]).unwrap(), rat(7));
        assert_eq!(p.evaluate(&[rat(0), rat(0)]).unwrap(), p.constant_term());
        assert!(matches!(p.evaluate(&[rat(1)]), Err(RingError::PointLength(1, 2))));
    }

    #[test]
    fn strict_ops_reject_mismatches() {
        let a = Elem::var(2, Mode::Poly, 0);
        let b = Elem::var(3, Mode::Poly, 0);
        assert!(matches!(a.try_add(&b), Err(RingError::VarMismatch(2, 3))));
        let s1 = Elem::var(2, Mode::Series(3), 0);
        let s2 = Elem::var(2, Mode::Series(4), 0);
        assert!(matches!(s1.try_mul(&s2), Err(RingError::ModeMismatch(_, _))));
        assert!(matches!(a.try_add(&s1), Err(RingError::ModeMismatch(_, _))));
    }

    #[test]
    fn poly_embeds_into_series_and_back() {
        let p = x().pow(2) * y() + x().scale(&ratio(-3, 7));
        let s = p.to_series(8);
        assert_eq!(s.to_poly(), p);
    }

    #[test]
    fn exact_division() {
        let p = (x() + y()) * (x() - y()).pow(2);
        let q = p.try_div_exact(&(x() + y())).unwrap();
        assert_eq!(q, (x() - y()).pow(2));
        assert!(matches!(
            (x() + Elem::one(2, Mode::Poly)).try_div_exact(&x()),
            Err(RingError::NotDivisible)
        ));
        assert!(matches!(
            x().try_div_exact(&Elem::zero(2, Mode::Poly)),
            Err(RingError::DivisionByZero)
        ));
    }

    #[test]
    fn render_roundtrip_shapes() {
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(Elem::zero(2, Mode::Poly).render(&names), "0");
        assert_eq!((x() - y()).render(&names), "x - y");
        assert_eq!((-x() - y()).render(&names), "-(x + y)");
        assert_eq!(x().scale(&ratio(1, 2)).render(&names), "1/2*x");
    }
}
