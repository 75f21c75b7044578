//! Representation-theorem frames of truncations, residual polynomials and
//! liftings.
//!
//! A frame fixes, for a chain key polynomial `Q` of degree `n` and value
//! `gamma = w(Q)`: the value group `(1/d) Z` of polynomials of degree `< n`,
//! the least `e` with `e gamma` in that group, a polynomial `h` of degree `< n`
//! with `w(h) = e gamma`, and the residue field `k` of the root field of `Q`.
//! The residue of `Q^e / h` is the transcendental generator `Y`.
//!
//! Residues of quotients of polynomials of degree `< n` are computed by
//! level: at level 0 they are residues of rationals; at level 1 they go
//! through the level-0 initial form and land in `F_p[t]/(M)`, where `t` is
//! the image of the level-0 generator and `M` the level-0 residual
//! polynomial of `Q`. Deeper levels are out of scope.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::valchain::ValuationChain;
use crate::values::{
    format_rational, least_multiplier, rational_valuation, ExtValue, ResidueElem, ResidueField,
    ValueGroup,
};

/// Subgroup of Q generated by 1 and the values of the levels strictly below
/// `q`: the value group of polynomials of degree `< deg q`.
pub fn value_group_below(chain: &ValuationChain, q: &Poly) -> Result<ValueGroup> {
    let level = chain.require_level(q)?;
    Ok(ValueGroup::generated_by(
        chain.levels()[..level].iter().map(|l| &l.value),
    ))
}

/// `p^a * prod Q_j^{b_j}` over the levels below the frame.
#[derive(Debug, Clone, PartialEq, Eq)]
struct KeyMonomial {
    p_exp: i64,
    exps: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Reducer {
    /// Level 0: polynomials of degree `< 1` are constants.
    Constants,
    /// Level 1: initial forms with respect to `Q_0 = X - c` at value
    /// `gamma_0`, generator `(X - c)^{e_0} / p^{a_0}` mapping to `t`.
    Level1 {
        center: BigRational,
        gamma0: BigRational,
        e0: usize,
        a0: i64,
        t: ResidueElem,
    },
}

/// Initial form `lead * (X - c)^j0 * R(Y0)` of a polynomial at level 0.
struct InitialForm {
    lead: BigRational,
    j0: usize,
    /// Coefficients of `R` over F_p, constant term first (always 1).
    residual: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct Frame {
    chain: ValuationChain,
    level: usize,
    n: usize,
    gamma: BigRational,
    group: ValueGroup,
    e: usize,
    h: Poly,
    h_mono: KeyMonomial,
    field: ResidueField,
    reducer: Reducer,
}

/// Largest `|a|` tried for the power of p in `h`.
const MAX_P_EXP: i64 = 64;

impl Frame {
    /// Builds the frame of the chain key polynomial `q`.
    ///
    /// `h` is the canonical choice: least degree, then least `|a|` for the
    /// power `p^a`, then lexicographically least exponent vector.
    pub fn build(chain: &ValuationChain, q: &Poly) -> Result<Frame> {
        let level = chain.require_level(q)?;
        if level >= 2 {
            return Err(Error::Unsupported(format!(
                "frames of Q_{level} need residue towers deeper than 2"
            )));
        }
        let prefix = chain.prefix(level).expect("level exists");
        let p = chain.p();
        let n = q.degree().unwrap();
        let gamma = chain.levels()[level].value.clone();
        let group = value_group_below(chain, q)?;
        let e = least_multiplier(&ExtValue::Finite(gamma.clone()), group)? as usize;
        let target = &gamma * BigRational::from_integer(e.into());
        let h_mono = find_h(&prefix, level, n, &target).ok_or_else(|| {
            Error::Internal(format!("no h of degree < {n} with value {}", format_rational(&target)))
        })?;
        let h = monomial_poly(&prefix, &h_mono);
        debug_assert_eq!(prefix.eval(&h), ExtValue::Finite(target.clone()));

        let (field, reducer) = if level == 0 {
            (ResidueField::prime(p)?, Reducer::Constants)
        } else {
            let base = Frame::build(&prefix, &prefix.levels()[0].key)?;
            let m = base.residual_polynomial(q)?;
            let modulus: Vec<u64> = m.coeffs.iter().map(|c| c.coeffs()[0]).collect();
            let field = ResidueField::extension(p, modulus).map_err(|err| match err {
                Error::Domain(_) => Error::Domain(format!(
                    "level-0 residual polynomial {m} of {q} is not irreducible"
                )),
                other => other,
            })?;
            let gamma0 = prefix.levels()[0].value.clone();
            let reducer = Reducer::Level1 {
                center: prefix.center(),
                e0: base.e,
                a0: (&gamma0 * BigRational::from_integer(base.e.into()))
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Unsupported("level-0 value too large".into()))?,
                gamma0,
                t: field.generator(),
            };
            (field, reducer)
        };
        Ok(Frame {
            chain: prefix,
            level,
            n,
            gamma,
            group,
            e,
            h,
            h_mono,
            field,
            reducer,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    pub fn value_group(&self) -> ValueGroup {
        self.group
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn truncator(&self) -> &Poly {
        &self.chain.levels()[self.level].key
    }

    /// The chain through the frame's level; it evaluates `w_Q`.
    pub fn chain(&self) -> &ValuationChain {
        &self.chain
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.field
    }

    fn p(&self) -> u64 {
        self.chain.p()
    }

    /// Residue in `k` of `num / den` for polynomials of degree `< n`
    /// with equal value.
    pub fn residue_of_ratio(&self, num: &Poly, den: &Poly) -> Result<ResidueElem> {
        for f in [num, den] {
            if f.degree().is_some_and(|d| d >= self.n) {
                return Err(Error::domain(format!("residue arguments must have degree < {}", self.n)));
            }
        }
        if den.is_zero() {
            return Err(Error::domain("residue of a quotient by zero"));
        }
        if num.is_zero() {
            return Ok(self.field.zero());
        }
        let (wn, wd) = (self.chain.eval(num), self.chain.eval(den));
        if wn != wd {
            return Err(Error::domain(format!(
                "residue needs equal values, got w({num}) = {wn} and w({den}) = {wd}"
            )));
        }
        let a = self.initial_form(num);
        let b = self.initial_form(den);
        self.form_ratio(&a, &b)
    }

    fn initial_form(&self, g: &Poly) -> InitialForm {
        match &self.reducer {
            Reducer::Constants => InitialForm {
                lead: g.coeff(0),
                j0: 0,
                residual: vec![1],
            },
            Reducer::Level1 {
                center,
                gamma0,
                e0,
                a0,
                ..
            } => {
                let p = self.p();
                let taylor = g.shift(center);
                let vals: Vec<Option<BigRational>> = taylor
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        rational_valuation(c, p).map(|v| {
                            BigRational::from_integer(v.into()) + gamma0 * BigRational::from_integer(j.into())
                        })
                    })
                    .collect();
                let min = vals.iter().flatten().min().unwrap().clone();
                let support: Vec<usize> =
                    (0..vals.len()).filter(|&j| vals[j].as_ref() == Some(&min)).collect();
                let j0 = support[0];
                let lead = taylor.coeff(j0);
                let k_max = (support.last().unwrap() - j0) / e0;
                let mut residual = vec![0u64; k_max + 1];
                for &j in &support {
                    let k = (j - j0) / e0;
                    let u = taylor.coeff(j) * p_pow(p, a0 * k as i64) / &lead;
                    residual[k] = crate::values::reduce_rational(&u, p).expect("unit by construction");
                }
                InitialForm { lead, j0, residual }
            }
        }
    }

    /// Residue of the quotient of two initial forms of equal value.
    fn form_ratio(&self, a: &InitialForm, b: &InitialForm) -> Result<ResidueElem> {
        let k = &self.field;
        match &self.reducer {
            Reducer::Constants => k.from_rational(&(&a.lead / &b.lead)),
            Reducer::Level1 { e0, a0, t, .. } => {
                let delta = a.j0 as i64 - b.j0 as i64;
                debug_assert_eq!(delta.rem_euclid(*e0 as i64), 0);
                let steps = delta / *e0 as i64;
                let unit = &a.lead / &b.lead * p_pow(self.p(), a0 * steps);
                let mut out = k.from_rational(&unit)?;
                out = k.mul(&out, &k.powi(t, steps)?);
                let ra = eval_fp_at(k, &a.residual, t);
                let rb = eval_fp_at(k, &b.residual, t);
                Ok(k.mul(&out, &k.mul(&ra, &k.inv(&rb)?)))
            }
        }
    }

    /// Residue of `num / h^i` where `num` has degree `< n`.
    fn residue_over_h_power(&self, num: &Poly, i: usize) -> Result<ResidueElem> {
        if num.is_zero() {
            return Ok(self.field.zero());
        }
        let a = self.initial_form(num);
        let b = self.h_power_form(i);
        self.form_ratio(&a, &b)
    }

    fn h_power_form(&self, i: usize) -> InitialForm {
        // h is a key monomial, so its initial form is itself.
        let exps = &self.h_mono.exps;
        let j0 = exps.first().copied().unwrap_or(0) * i;
        InitialForm {
            lead: p_pow(self.p(), self.h_mono.p_exp * i as i64),
            j0,
            residual: vec![1],
        }
    }

    /// `w_Q(F)` computed from the `Q`-expansion, with the term values.
    fn expansion_values(&self, f: &Poly) -> (Vec<Poly>, Vec<ExtValue>) {
        let exp = f.q_expansion(self.truncator()).expect("chain keys are monic");
        let values = exp
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| &self.chain.eval(c) + &ExtValue::Finite(&self.gamma * BigRational::from_integer(j.into())))
            .collect();
        (exp.coeffs, values)
    }

    /// The residual polynomial `G(Y)`: the residue of `F / h^m`.
    ///
    /// Requires `F` monic of degree `e m n` with `w_Q(F) = e m gamma`.
    pub fn residual_polynomial(&self, f: &Poly) -> Result<ResidualPoly> {
        if !f.is_monic() {
            return Err(Error::domain("residual polynomial requires a monic F"));
        }
        let deg = f.degree().unwrap();
        let en = self.e * self.n;
        if deg == 0 || deg % en != 0 {
            return Err(Error::domain(format!(
                "deg F = {deg} is not a positive multiple of e*n = {en}"
            )));
        }
        let m = deg / en;
        let (coeffs, values) = self.expansion_values(f);
        let target = ExtValue::Finite(&self.gamma * BigRational::from_integer((self.e * m).into()));
        let trunc = values.iter().min().unwrap();
        if *trunc != target {
            return Err(Error::domain(format!(
                "truncation value w_Q(F) = {trunc} differs from e*m*gamma = {target}"
            )));
        }
        let mut g = vec![self.field.zero(); m + 1];
        for i in 0..=m {
            let j = self.e * (m - i);
            if values[j] == target {
                g[m - i] = self.residue_over_h_power(&coeffs[j], i)?;
            }
        }
        Ok(ResidualPoly::new(self.field.clone(), g))
    }

    /// The lifting `F = Q^{em} + sum g_i Q^{e(m-i)}` of a monic `G != Y`,
    /// with `deg g_i < n` and residue of `g_i / h^i` equal to the
    /// coefficient of `Y^{m-i}`.
    pub fn lift(&self, g: &ResidualPoly) -> Result<Poly> {
        if g.field != self.field {
            return Err(Error::domain(format!("G must have coefficients in {}", self.field)));
        }
        let m = match g.degree() {
            Some(m) if m >= 1 && g.is_monic() => m,
            _ => return Err(Error::domain("lifting requires a monic G of degree >= 1")),
        };
        if g.is_y() {
            return Err(Error::domain("G(Y) = Y has no lifting"));
        }
        let q = self.truncator();
        let mut f = q.pow(self.e * m);
        for i in 1..=m {
            let c = &g.coeffs[m - i];
            if self.field.is_zero(c) {
                continue;
            }
            let gi = self.preimage(c, i)?;
            f = &f + &(&gi * &q.pow(self.e * (m - i)));
        }
        let back = self.residual_polynomial(&f)?;
        if &back != g {
            return Err(Error::Internal(format!("lift of {g} re-reduces to {back}")));
        }
        Ok(f)
    }

    /// A polynomial of degree `< n` whose quotient by `h^i` has residue `c`.
    fn preimage(&self, c: &ResidueElem, i: usize) -> Result<Poly> {
        let k = &self.field;
        let p = self.p();
        match &self.reducer {
            Reducer::Constants => {
                let lift = BigRational::from_integer(c.coeffs()[0].into());
                Ok(Poly::constant(lift * p_pow(p, self.h_mono.p_exp * i as i64)))
            }
            Reducer::Level1 {
                center,
                gamma0,
                e0,
                a0,
                ..
            } => {
                let target = &self.gamma * BigRational::from_integer((self.e * i).into());
                // A monomial p^a (X - c)^b with b < e0 and value `target`.
                let (a, b) = (0..*e0)
                    .find_map(|b| {
                        let a = &target - gamma0 * BigRational::from_integer(b.into());
                        a.is_integer().then(|| (a.to_integer().to_i64().unwrap(), b))
                    })
                    .ok_or_else(|| Error::Internal("target value outside the value group".into()))?;
                let xc = Poly::linear(center.clone());
                let mono = form(BigRational::one(), a, b, p);
                let rho = self.form_ratio(&mono, &self.h_power_form(i))?;
                let digits = k.mul(c, &k.inv(&rho)?);
                let mut out = Poly::zero();
                for (kk, &d) in digits.coeffs().iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    let coeff = BigRational::from_integer(d.into()) * p_pow(p, a - a0 * kk as i64);
                    out = &out + &xc.pow(b + kk * e0).scale(&coeff);
                }
                Ok(out)
            }
        }
    }

    /// Trivial liftings are those of degree `n`.
    pub fn is_trivial_lifting(&self, f: &Poly) -> Result<bool> {
        self.residual_polynomial(f)?;
        Ok(f.degree() == Some(self.n))
    }

    pub fn report(&self) -> FrameReport {
        FrameReport {
            n: self.n,
            gamma: format_rational(&self.gamma),
            e: self.e,
            h: self.h.to_string(),
            residue_field: ResidueFieldReport {
                p: self.p(),
                modulus: self
                    .field
                    .modulus()
                    .map(|m| crate::values::format_fp_poly(m, 't')),
            },
        }
    }
}

fn form(scale: BigRational, a: i64, b: usize, p: u64) -> InitialForm {
    InitialForm {
        lead: scale * p_pow(p, a),
        j0: b,
        residual: vec![1],
    }
}

fn p_pow(p: u64, a: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if a >= 0 {
        num_traits::pow(base, a as usize)
    } else {
        num_traits::pow(base.recip(), a.unsigned_abs() as usize)
    }
}

fn eval_fp_at(k: &ResidueField, coeffs: &[u64], t: &ResidueElem) -> ResidueElem {
    coeffs
        .iter()
        .rev()
        .fold(k.zero(), |acc, &c| k.add(&k.mul(&acc, t), &k.from_u64(c)))
}

fn monomial_poly(chain: &ValuationChain, m: &KeyMonomial) -> Poly {
    let mut out = Poly::constant(p_pow(chain.p(), m.p_exp));
    for (j, &b) in m.exps.iter().enumerate() {
        out = &out * &chain.levels()[j].key.pow(b);
    }
    out
}

/// Canonical `h` for the frame at `level`: key monomials over the lower
/// levels of degree `< n` and value `target`.
fn find_h(chain: &ValuationChain, level: usize, n: usize, target: &BigRational) -> Option<KeyMonomial> {
    let lower = &chain.levels()[..level];
    let mut best: Option<(usize, i64, KeyMonomial)> = None;
    let mut exps = vec![0usize; level];
    loop {
        let deg: usize = exps
            .iter()
            .zip(lower)
            .map(|(b, l)| b * l.key.degree().unwrap())
            .sum();
        if deg < n {
            let v: BigRational = exps
                .iter()
                .zip(lower)
                .map(|(b, l)| &l.value * BigRational::from_integer((*b).into()))
                .sum();
            let a = target - v;
            if a.is_integer() {
                let a = a.to_integer().to_i64().filter(|a| a.abs() <= MAX_P_EXP);
                if let Some(a) = a {
                    let cand = (deg, a.abs(), KeyMonomial { p_exp: a, exps: exps.clone() });
                    let better = match &best {
                        None => true,
                        Some((d, aa, m)) => (cand.0, cand.1, &cand.2.exps) < (*d, *aa, &m.exps),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
        // Next exponent vector with total degree < n, odometer style.
        let mut i = 0;
        loop {
            if i == level {
                return best.map(|(_, _, m)| m);
            }
            exps[i] += 1;
            let deg: usize = exps
                .iter()
                .zip(lower)
                .map(|(b, l)| b * l.key.degree().unwrap())
                .sum();
            if deg < n {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueFieldReport {
    pub p: u64,
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    pub n: usize,
    pub gamma: String,
    pub e: usize,
    pub h: String,
    pub residue_field: ResidueFieldReport,
}

/// A polynomial in `Y` over a residue field, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidualPoly {
    field: ResidueField,
    coeffs: Vec<ResidueElem>,
}

impl ResidualPoly {
    pub fn new(field: ResidueField, mut coeffs: Vec<ResidueElem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        ResidualPoly { field, coeffs }
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn coeffs(&self) -> &[ResidueElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    /// True for exactly `G(Y) = Y`.
    pub fn is_y(&self) -> bool {
        self.degree() == Some(1) && self.is_monic() && self.field.is_zero(&self.coeffs[0])
    }

    pub fn constant(field: &ResidueField, c: ResidueElem) -> Self {
        ResidualPoly::new(field.clone(), vec![c])
    }

    pub fn y(field: &ResidueField) -> Self {
        ResidualPoly::new(field.clone(), vec![field.zero(), field.one()])
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = k.zero();
        let c = (0..n)
            .map(|i| k.add(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        ResidualPoly::new(k.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        ResidualPoly::new(self.field.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return ResidualPoly::new(k.clone(), Vec::new());
        }
        let mut c = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = k.add(&c[i + j], &k.mul(a, b));
            }
        }
        ResidualPoly::new(k.clone(), c)
    }

    /// Remainder by a nonzero divisor.
    pub fn rem(&self, d: &Self) -> Result<Self> {
        let k = &self.field;
        let dd = d.degree().ok_or_else(|| Error::domain("division by zero polynomial"))?;
        let inv = k.inv(d.coeffs.last().unwrap())?;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let lead = k.mul(r.last().unwrap(), &inv);
            let shift = r.len() - 1 - dd;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[shift + j] = k.sub(&r[shift + j], &k.mul(&lead, c));
            }
            while r.last().is_some_and(|c| k.is_zero(c)) {
                r.pop();
            }
        }
        Ok(ResidualPoly::new(k.clone(), r))
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a
    }

    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m).expect("modulus nonzero");
        let mut acc = ResidualPoly::constant(&self.field, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).expect("modulus nonzero");
            }
            base = base.mul(&base).rem(m).expect("modulus nonzero");
            e >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test over the finite field of coefficients.
    pub fn is_irreducible(&self) -> bool {
        let Some(m) = self.degree() else { return false };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let q = self.field.order();
        let y = ResidualPoly::y(&self.field);
        // frob[i] = Y^(q^i) mod G
        let mut frob = vec![y.rem(self).unwrap()];
        for i in 1..=m {
            let next = frob[i - 1].pow_mod(q, self);
            frob.push(next);
        }
        if frob[m] != frob[0] {
            return false;
        }
        let mut primes = Vec::new();
        let mut rest = m;
        let mut d = 2;
        while rest > 1 {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        primes.into_iter().all(|r| {
            let diff = frob[m / r].sub(&y);
            diff.gcd(self).degree() == Some(0)
        })
    }

    pub fn parse(field: &ResidueField, s: &str) -> Result<Self> {
        crate::parse::parse_with(&ResidualPolys(field), s)
    }
}

impl fmt::Display for ResidualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let mono = match i {
                0 => String::new(),
                1 => "Y".to_string(),
                _ => format!("Y^{i}"),
            };
            let nonzero_terms = c.coeffs().iter().filter(|&&x| x != 0).count();
            terms.push(if i == 0 {
                cs
            } else if *c == k.one() {
                mono
            } else if nonzero_terms > 1 {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

struct ResidualPolys<'a>(&'a ResidueField);

impl crate::parse::Algebra for ResidualPolys<'_> {
    type Elem = ResidualPoly;

    fn constant(&self, r: &BigRational) -> Result<ResidualPoly> {
        Ok(ResidualPoly::constant(self.0, crate::parse::Algebra::constant(self.0, r)?))
    }

    fn variable(&self, name: char) -> Result<ResidualPoly> {
        match name {
            'Y' => Ok(ResidualPoly::y(self.0)),
            _ => Ok(ResidualPoly::constant(self.0, crate::parse::Algebra::variable(self.0, name)?)),
        }
    }

    fn add(&self, a: &ResidualPoly, b: &ResidualPoly) -> ResidualPoly {
        a.add(b)
    }

    fn neg(&self, a: &ResidualPoly) -> ResidualPoly {
        a.neg()
    }

    fn mul(&self, a: &ResidualPoly, b: &ResidualPoly) -> ResidualPoly {
        a.mul(b)
    }
}
