//! Exact values: extended rationals, subgroups of Q, and residue fields.
//!
//! The base valuation is the p-adic one normalized by `v(p) = 1`, so every
//! value handled by the crate is a rational number or `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Shorthand for `BigRational::new(num, den)`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("invalid rational literal `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An exact rational value or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(BigRational),
    Infinity,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtValue::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinity => None,
        }
    }

    /// Returns the finite value, or a domain error naming `what`.
    pub fn expect_finite(&self, what: &str) -> Result<&BigRational> {
        self.finite()
            .ok_or_else(|| Error::domain(format!("{what} must be finite")))
    }

    /// Multiplication by a non-negative integer; `0 * inf` is taken as `0`.
    pub fn scale(&self, k: usize) -> Self {
        match self {
            _ if k == 0 => ExtValue::zero(),
            ExtValue::Finite(r) => ExtValue::Finite(r * BigRational::from_integer(k.into())),
            ExtValue::Infinity => ExtValue::Infinity,
        }
    }

    /// `self - other` when `other` is finite; `inf - finite = inf`.
    pub fn sub_finite(&self, other: &BigRational) -> Self {
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r - other),
            ExtValue::Infinity => ExtValue::Infinity,
        }
    }
}

impl From<BigRational> for ExtValue {
    fn from(r: BigRational) -> Self {
        ExtValue::Finite(r)
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
            (ExtValue::Finite(_), ExtValue::Infinity) => Ordering::Less,
            (ExtValue::Infinity, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::Infinity, ExtValue::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinity,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(r) => f.write_str(&format_rational(r)),
            ExtValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtValue::Infinity),
            other => parse_rational(other).map(ExtValue::Finite),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("p = {p} is not prime")))
    }
}

/// p-adic valuation of a nonzero integer.
pub(crate) fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Valuation of a rational under an already-checked prime; `None` for zero.
pub(crate) fn rational_valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
    }
}

pub(crate) fn valuation_ext(r: &BigRational, p: u64) -> ExtValue {
    match rational_valuation(r, p) {
        Some(v) => ExtValue::from_int(v),
        None => ExtValue::Infinity,
    }
}

/// The p-adic valuation `v_p(r)`, with `v_p(0) = +inf`.
pub fn base_valuation(r: &BigRational, p: u64) -> Result<ExtValue> {
    check_prime(p)?;
    Ok(valuation_ext(r, p))
}

/// The subgroup `(1/d) Z` of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValueGroup {
    denom: u64,
}

impl ValueGroup {
    pub fn new(denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::domain("value group denominator must be positive"));
        }
        Ok(ValueGroup { denom })
    }

    pub fn integers() -> Self {
        ValueGroup { denom: 1 }
    }

    /// The smallest group `(1/d) Z` containing `Z` and every given value.
    pub fn generated_by<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> Self {
        let mut d = BigInt::one();
        for v in values {
            d = d.lcm(v.denom());
        }
        ValueGroup {
            denom: d.to_u64().expect("value group denominator exceeds u64"),
        }
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        (r * BigRational::from_integer(self.denom.into())).is_integer()
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            f.write_str("Z")
        } else {
            write!(f, "(1/{})Z", self.denom)
        }
    }
}

/// Least `e >= 1` with `e * gamma` in the group.
pub fn least_multiplier(gamma: &ExtValue, group: ValueGroup) -> Result<u64> {
    let g = gamma.expect_finite("gamma in least_multiplier")?;
    let scaled = g * BigRational::from_integer(group.denom.into());
    scaled
        .denom()
        .to_u64()
        .ok_or_else(|| Error::domain("multiplier exceeds u64"))
}

fn mod_p(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Image in F_p of a rational of non-negative valuation; the prime is
/// assumed checked.
pub(crate) fn reduce_rational(r: &BigRational, p: u64) -> Result<u64> {
    match rational_valuation(r, p) {
        None => Ok(0),
        Some(v) if v < 0 => Err(Error::domain(format!(
            "residue of {} requires non-negative {p}-adic valuation, found {v}",
            format_rational(r)
        ))),
        Some(_) => {
            let n = mod_p(r.numer(), p);
            let d = mod_p(r.denom(), p);
            Ok(n * inv_mod(d, p) % p)
        }
    }
}

/// Residue class of `r` in F_p.
pub fn residue_of_rational(r: &BigRational, p: u64) -> Result<ResidueElem> {
    check_prime(p)?;
    Ok(ResidueElem(vec![reduce_rational(r, p)?]))
}

/// Dense polynomials over F_p, lowest degree first, used for moduli.
pub(crate) mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (j, c) in m.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + p - lead * c % p) % p;
            }
            r = trim(r);
        }
        r
    }

    /// All monic polynomials of the given degree, as coefficient vectors.
    pub fn monics(deg: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
        let total = p.pow(deg as u32);
        (0..total).map(move |mut idx| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            c
        })
    }

    /// Irreducibility by exhaustive search for monic factors of degree at
    /// most `deg / 2`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let d = m.len().saturating_sub(1);
        if d == 0 {
            return false;
        }
        for k in 1..=d / 2 {
            if monics(k, p).any(|f| rem_monic(m, &f, p).is_empty()) {
                return false;
            }
        }
        true
    }
}

/// Largest modulus degree accepted for residue fields.
pub const MAX_MODULUS_DEGREE: usize = 4;

/// The residue field F_p, or F_p[t]/(M) for a monic irreducible M.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    /// Coefficients of M, lowest first, monic; `None` for F_p itself.
    modulus: Option<Vec<u64>>,
}

/// An element of a [`ResidueField`]: coefficients over F_p of a polynomial
/// in `t` of degree below `deg M`, lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueElem(pub(crate) Vec<u64>);

impl ResidueElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

impl ResidueField {
    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(ResidueField { p, modulus: None })
    }

    /// F_p[t]/(M); `modulus` is given lowest coefficient first.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        let m = fp::trim(modulus.into_iter().map(|c| c % p).collect());
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::domain("residue field modulus must be monic of degree >= 1"));
        }
        if m.len() - 1 > MAX_MODULUS_DEGREE {
            return Err(Error::Unsupported(format!(
                "residue field modulus of degree {} exceeds {MAX_MODULUS_DEGREE}",
                m.len() - 1
            )));
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::domain("residue field modulus must be irreducible over F_p"));
        }
        Ok(ResidueField { p, modulus: Some(m) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Degree over F_p.
    pub fn degree(&self) -> usize {
        self.modulus.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    fn normalize(&self, mut c: Vec<u64>) -> ResidueElem {
        for x in c.iter_mut() {
            *x %= self.p;
        }
        let mut c = match &self.modulus {
            Some(m) => fp::rem_monic(&c, m, self.p),
            None => fp::trim(c),
        };
        c.resize(self.degree(), 0);
        ResidueElem(c)
    }

    pub fn elem(&self, coeffs: &[u64]) -> ResidueElem {
        self.normalize(coeffs.to_vec())
    }

    pub fn zero(&self) -> ResidueElem {
        ResidueElem(vec![0; self.degree()])
    }

    pub fn one(&self) -> ResidueElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> ResidueElem {
        self.normalize(vec![n])
    }

    /// The class of `t`. Over F_p itself this is zero.
    pub fn generator(&self) -> ResidueElem {
        self.normalize(vec![0, 1])
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<ResidueElem> {
        Ok(self.from_u64(reduce_rational(r, self.p)?))
    }

    /// The element with index `idx` in `0..order()`, base-p digits as
    /// coefficients.
    pub fn element_at(&self, mut idx: u64) -> ResidueElem {
        let mut c = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            c.push(idx % self.p);
            idx /= self.p;
        }
        ResidueElem(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = ResidueElem> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    pub fn is_zero(&self, a: &ResidueElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        ResidueElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn neg(&self, a: &ResidueElem) -> ResidueElem {
        ResidueElem(a.0.iter().map(|x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        self.normalize(fp::mul(&a.0, &b.0, self.p))
    }

    pub fn pow(&self, a: &ResidueElem, mut e: u64) -> ResidueElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ResidueElem) -> Result<ResidueElem> {
        if self.is_zero(a) {
            return Err(Error::domain("inverse of zero in residue field"));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// `a^k` for a possibly negative exponent.
    pub fn powi(&self, a: &ResidueElem, k: i64) -> Result<ResidueElem> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// Renders an element as a polynomial in `t`, e.g. `t+2`.
    pub fn format(&self, a: &ResidueElem) -> String {
        format_fp_poly(&a.0, 't')
    }

    /// Parses a polynomial in `t` with integer (or rational) coefficients.
    pub fn parse(&self, s: &str) -> Result<ResidueElem> {
        crate::parse::parse_residue_elem(self, s)
    }
}

/// Formats a polynomial over F_p (lowest degree first) in the variable `var`.
pub fn format_fp_poly(c: &[u64], var: char) -> String {
    let mut terms = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (a, k) {
            (_, 0) => a.to_string(),
            (1, _) => mono,
            _ => format!("{a}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "F_{}", self.p),
            Some(m) => write!(f, "F_{}[t]/({})", self.p, format_fp_poly(m, 't')),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn base_valuation_examples() {
        assert_eq!(base_valuation(&rat(9, 2), 3).unwrap(), ExtValue::from_int(2));
        assert_eq!(base_valuation(&int(0), 5).unwrap(), ExtValue::Infinity);
        assert_eq!(base_valuation(&int(2), 3).unwrap(), ExtValue::from_int(0));
        assert_eq!(base_valuation(&rat(5, 27), 3).unwrap(), ExtValue::from_int(-3));
        assert!(matches!(base_valuation(&int(2), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn least_multiplier_examples() {
        let z = ValueGroup::integers();
        let half = ValueGroup::new(2).unwrap();
        assert_eq!(least_multiplier(&rat(1, 2).into(), z).unwrap(), 2);
        assert_eq!(least_multiplier(&rat(3, 2).into(), half).unwrap(), 1);
        assert_eq!(least_multiplier(&int(0).into(), z).unwrap(), 1);
        assert_eq!(least_multiplier(&rat(5, 6).into(), half).unwrap(), 3);
        assert!(least_multiplier(&ExtValue::Infinity, z).is_err());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_of_rational(&int(2), 3).unwrap().coeffs(), &[2]);
        assert_eq!(residue_of_rational(&rat(1, 2), 3).unwrap().coeffs(), &[2]);
        assert_eq!(residue_of_rational(&int(3), 3).unwrap().coeffs(), &[0]);
        assert!(residue_of_rational(&rat(1, 3), 3).is_err());
    }

    #[test]
    fn ext_value_order_and_text() {
        assert!(ExtValue::from_int(100) < ExtValue::Infinity);
        assert_eq!(&ExtValue::Infinity + &ExtValue::from_int(1), ExtValue::Infinity);
        assert_eq!(ExtValue::Finite(rat(-3, 6)).to_string(), "-1/2");
        assert_eq!("inf".parse::<ExtValue>().unwrap(), ExtValue::Infinity);
        assert_eq!("4/8".parse::<ExtValue>().unwrap(), ExtValue::Finite(rat(1, 2)));
        assert!("1/0".parse::<ExtValue>().is_err());
    }

    #[test]
    fn value_group_generation() {
        let g = ValueGroup::generated_by([rat(1, 2), rat(2, 3)].iter());
        assert_eq!(g.denom(), 6);
        assert!(g.contains(&rat(5, 6)));
        assert!(!g.contains(&rat(1, 4)));
    }

    #[test]
    fn moduli_irreducibility() {
        // t^2+1 over F_3 is irreducible, over F_5 it is not.
        assert!(ResidueField::extension(3, vec![1, 0, 1]).is_ok());
        assert!(ResidueField::extension(5, vec![1, 0, 1]).is_err());
        // (t^2+1)^2 over F_3: no roots but reducible.
        assert!(ResidueField::extension(3, vec![1, 0, 2, 0, 1]).is_err());
        assert!(matches!(
            ResidueField::extension(2, vec![1, 1, 0, 0, 0, 1]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn f9_arithmetic() {
        let k = ResidueField::extension(3, vec![1, 0, 1]).unwrap();
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), k.from_u64(2));
        assert_eq!(k.order(), 9);
        for a in k.elements().filter(|a| !k.is_zero(a)) {
            assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        }
        assert_eq!(k.format(&k.add(&t, &k.from_u64(2))), "t+2");
        assert_eq!(k.parse("t+2").unwrap(), k.elem(&[2, 1]));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-500i64..500, 1i64..200).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn valuation_is_multiplicative_and_ultrametric(a in small_rational(), b in small_rational(), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let va = valuation_ext(&a, p);
            let vb = valuation_ext(&b, p);
            prop_assert_eq!(valuation_ext(&(&a * &b), p), &va + &vb);
            let vs = valuation_ext(&(&a + &b), p);
            prop_assert!(vs >= va.clone().min(vb.clone()));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }

        #[test]
        fn least_multiplier_is_least(n in -60i64..60, d in 1i64..30, gd in 1u64..12) {
            let g = ValueGroup::new(gd).unwrap();
            let gamma = rat(n, d);
            let e = least_multiplier(&gamma.clone().into(), g).unwrap();
            prop_assert!(g.contains(&(&gamma * int(e as i64))));
            for k in 1..e {
                prop_assert!(!g.contains(&(&gamma * int(k as i64))));
            }
        }

        #[test]
        fn residue_is_ring_homomorphism(a in small_rational(), b in small_rational(), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let k = ResidueField::prime(p).unwrap();
            prop_assume!(valuation_ext(&a, p) >= ExtValue::zero());
            prop_assume!(valuation_ext(&b, p) >= ExtValue::zero());
            let ra = k.from_rational(&a).unwrap();
            let rb = k.from_rational(&b).unwrap();
            prop_assert_eq!(k.from_rational(&(&a * &b)).unwrap(), k.mul(&ra, &rb));
            prop_assert_eq!(k.from_rational(&(&a + &b)).unwrap(), k.add(&ra, &rb));
        }
    }
}
