//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::values::format_rational;

/// A polynomial with rational coefficients, constant term first.
///
/// Trailing zeros are always trimmed, so the zero polynomial has an empty
/// coefficient vector and [`Poly::degree`] returns `None` for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// The monic linear polynomial `X - c`.
    pub fn linear(c: BigRational) -> Self {
        Poly::new(vec![-c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `X^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `f(X + c)`, so that its coefficients are the Taylor coefficients of
    /// `f` at `c`.
    pub fn shift(&self, c: &BigRational) -> Poly {
        let xc = Poly::new(vec![c.clone(), BigRational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, a| &(&acc * &xc) + &Poly::constant(a.clone()))
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let lead_inv = d.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// The `b`-th Hasse derivative: the coefficient of `X^(k-b)` is
    /// `C(k, b)` times the coefficient of `X^k`.
    pub fn hasse_derivative(&self, b: usize) -> Result<Poly> {
        if b == 0 {
            return Err(Error::domain("Hasse derivative order b must be >= 1"));
        }
        Ok(self.hasse_unchecked(b))
    }

    /// Hasse derivative including order 0 (the identity).
    pub(crate) fn hasse_unchecked(&self, b: usize) -> Poly {
        if self.coeffs.len() <= b {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - b);
        let mut binom = BigInt::one();
        for k in b..self.coeffs.len() {
            // binom = C(k, b)
            if k > b {
                binom = binom * BigInt::from(k) / BigInt::from(k - b);
            }
            out.push(&self.coeffs[k] * BigRational::from_integer(binom.clone()));
        }
        Poly::new(out)
    }

    /// Expansion in powers of a monic `q` with coefficients of degree below
    /// `deg q`.
    pub fn q_expansion(&self, q: &Poly) -> Result<QExpansion> {
        check_expansion_base(q)?;
        let mut coeffs = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (quot, rem) = rest.div_rem(q)?;
            coeffs.push(rem);
            rest = quot;
        }
        Ok(QExpansion {
            base: q.clone(),
            coeffs,
        })
    }

    /// Formats with the given variable name, e.g. `X^2+1` or `t+2`.
    pub fn format_in(&self, var: char) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", format_rational(&a)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn check_expansion_base(q: &Poly) -> Result<()> {
    if !q.is_monic() || q.degree() == Some(0) {
        return Err(Error::domain("expansion base Q must be monic of degree >= 1"));
    }
    Ok(())
}

/// A polynomial written as `sum f_i Q^i` with `deg f_i < deg Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    pub base: Poly,
    /// `f_0, f_1, ...`; empty for the zero polynomial.
    pub coeffs: Vec<Poly>,
}

impl QExpansion {
    /// Highest index `d` with `f_d != 0`.
    pub fn top_index(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn reconstruct(&self) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, f| &(&acc * &self.base) + f)
    }
}

/// `Res(f, g) = lc(g)^deg f * prod f(beta)` over the roots `beta` of `g`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<BigRational> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::domain("resultant of the zero polynomial"));
    };
    let lg = g.leading().unwrap();
    if n == 0 {
        return Ok(num_traits::pow(lg.clone(), m));
    }
    if m == 0 {
        return Ok(num_traits::pow(f.coeffs[0].clone(), n));
    }
    let (_, r) = f.div_rem(g)?;
    let Some(k) = r.degree() else {
        return Ok(BigRational::zero());
    };
    // Res(f, g) = lc(g)^(m-k) Res(r, g) and Res(r, g) = (-1)^(kn) Res(g, r).
    let mut out = num_traits::pow(lg.clone(), m - k) * resultant(g, &r)?;
    if (k * n) % 2 == 1 {
        out = -out;
    }
    Ok(out)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in('X'))
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_poly(s)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;

            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::values::{int, rat};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(p("X^2+1").hasse_derivative(1).unwrap(), p("2X"));
        assert_eq!(p("X^2+1").hasse_derivative(2).unwrap(), p("1"));
        assert_eq!(p("X^4").hasse_derivative(3).unwrap(), p("4X"));
        assert!(p("X^2+1").hasse_derivative(3).unwrap().is_zero());
        assert!(p("X").hasse_derivative(0).is_err());
    }

    #[test]
    fn expansion_examples() {
        let e = p("X^3+2X+1").q_expansion(&p("X^2+1")).unwrap();
        assert_eq!(e.coeffs, vec![p("X+1"), p("X")]);
        let e = p("X^2+1").q_expansion(&p("X")).unwrap();
        assert_eq!(e.coeffs, vec![p("1"), p("0"), p("1")]);
        let e = p("X^2+2").q_expansion(&p("X^2+1")).unwrap();
        assert_eq!(e.coeffs, vec![p("1"), p("1")]);
        assert!(p("X").q_expansion(&p("2X")).is_err());
        assert!(p("X").q_expansion(&p("1")).is_err());
        assert!(Poly::zero().q_expansion(&p("X")).unwrap().coeffs.is_empty());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("X^2+1"), &p("X")).unwrap(), int(1));
        // lc(g)^deg f * f(5) with f = X-2.
        assert_eq!(resultant(&p("X-2"), &p("X-5")).unwrap(), int(3));
        assert_eq!(resultant(&p("X-5"), &p("X-2")).unwrap(), int(-3));
        assert_eq!(resultant(&p("X^2-3"), &p("X^2-3")).unwrap(), int(0));
        assert!(resultant(&Poly::zero(), &p("X")).is_err());
        // lc(g) = 2, roots of g are 1/2: 2^2 * f(1/2) = 4 * (1/4 + 1) = 5.
        assert_eq!(resultant(&p("X^2+1"), &p("2X-1")).unwrap(), int(5));
    }

    #[test]
    fn formatting() {
        assert_eq!(p("X^4+2X^2+4").to_string(), "X^4+2*X^2+4");
        assert_eq!(p("-X + 1/2").to_string(), "-X+1/2");
        assert_eq!(p("-3/2X^3 - X").to_string(), "-3/2*X^3-X");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("X+2").format_in('t'), "t+2");
    }

    #[test]
    fn shift_gives_taylor_coefficients() {
        // (X+1)^2 + 1 = X^2 + 2X + 2
        assert_eq!(p("X^2+1").shift(&int(1)), p("X^2+2X+2"));
        assert_eq!(p("X^2+1").eval(&rat(1, 2)), rat(5, 4));
    }

    /// Resultant by Sylvester determinant, with exact Gaussian elimination.
    fn sylvester_resultant(f: &Poly, g: &Poly) -> BigRational {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        let size = m + n;
        if size == 0 {
            return int(1);
        }
        let mut a = vec![vec![BigRational::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                a[i][i + j] = f.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                a[n + i][i + j] = g.coeff(n - j);
            }
        }
        let mut det = int(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !a[r][col].is_zero()) else {
                return int(0);
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..size {
                let factor = &a[r][col] / &a[col][col];
                for c in col..size {
                    let v = &factor * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
        det
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-9i64..10, 1i64..4), 1..=max_deg + 1)
            .prop_map(|c| Poly::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn nonconstant(max_deg: usize) -> impl Strategy<Value = Poly> {
        small_poly(max_deg).prop_filter("degree >= 1", |f| f.degree().unwrap_or(0) >= 1)
    }

    proptest! {
        #[test]
        fn hasse_leibniz(f in small_poly(5), g in small_poly(5), b in 1usize..6) {
            let lhs = (&f * &g).hasse_unchecked(b);
            let rhs = (0..=b).fold(Poly::zero(), |acc, i| {
                &acc + &(&f.hasse_unchecked(i) * &g.hasse_unchecked(b - i))
            });
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn expansion_reconstructs(f in small_poly(8), q in nonconstant(3)) {
            let lead = q.leading().unwrap().clone();
            let q = q.scale(&lead.recip());
            let e = f.q_expansion(&q).unwrap();
            prop_assert_eq!(e.reconstruct(), f);
            let dq = q.degree().unwrap();
            for c in &e.coeffs {
                prop_assert!(c.degree().map_or(true, |d| d < dq));
            }
            if let Some(top) = e.coeffs.last() {
                prop_assert!(!top.is_zero());
            }
        }

        #[test]
        fn resultant_antisymmetry_and_sylvester(f in nonconstant(4), g in nonconstant(4)) {
            let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
            let fg = resultant(&f, &g).unwrap();
            let gf = resultant(&g, &f).unwrap();
            let sign = if (m * n) % 2 == 1 { int(-1) } else { int(1) };
            prop_assert_eq!(&fg, &(&sign * &gf));
            // The Sylvester determinant with f in the top rows is Res_std(f, g) = Res(g, f).
            prop_assert_eq!(gf, sylvester_resultant(&f, &g));
        }

        #[test]
        fn display_round_trips(f in small_poly(6)) {
            prop_assert_eq!(f.to_string().parse::<Poly>().unwrap(), f);
        }

        #[test]
        fn division_identity(f in small_poly(7), d in nonconstant(3)) {
            let (q, r) = f.div_rem(&d).unwrap();
            prop_assert_eq!(&(&q * &d) + &r, f);
            prop_assert!(r.degree().map_or(true, |k| k < d.degree().unwrap()));
        }
    }
}
