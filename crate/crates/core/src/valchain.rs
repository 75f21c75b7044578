//! Valuations of Q_p(X) given by a finite chain of key polynomials.
//!
//! A chain `[(Q_0, g_0), ..., (Q_N, g_N)]` defines `w` inductively: at level
//! 0 a polynomial is expanded in powers of the linear `Q_0 = X - c` and
//! `w_0(sum c_j Q_0^j) = min v(c_j) + j g_0`; at level `i` it is expanded in
//! powers of `Q_i` and the coefficients are valued by level `i - 1`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::poly::Poly;
use crate::values::{check_prime, is_prime, least_multiplier, valuation_ext, ExtValue, ValueGroup};

/// An unvalidated chain, as read from a chain-spec document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    pub p: u64,
    pub levels: Vec<(Poly, ExtValue)>,
}

/// A single `(key polynomial, value)` level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Level {
    pub key: Poly,
    pub value: BigRational,
}

/// The first chain invariant that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainViolation {
    NotPrime(u64),
    Empty,
    NotMonic { level: usize },
    FirstNotLinear,
    DegreeNotIncreasing { level: usize },
    InfiniteValue { level: usize },
    ValueGrowth {
        level: usize,
        prefix_value: ExtValue,
        value: BigRational,
    },
    NotKeyPolynomial { level: usize, reason: String },
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::NotPrime(p) => write!(f, "p = {p} is not prime"),
            ChainViolation::Empty => write!(f, "chain has no levels"),
            ChainViolation::NotMonic { level } => {
                write!(f, "key polynomial at level {level} is not monic")
            }
            ChainViolation::FirstNotLinear => write!(f, "deg Q_0 must be 1"),
            ChainViolation::DegreeNotIncreasing { level } => write!(
                f,
                "degrees must strictly increase: deg Q_{} >= deg Q_{level}",
                level - 1
            ),
            ChainViolation::InfiniteValue { level } => {
                write!(f, "value at level {level} must be a finite rational")
            }
            ChainViolation::ValueGrowth {
                level,
                prefix_value,
                value,
            } => write!(
                f,
                "value growth: prefix value of Q_{level} is {prefix_value}, which is not < {}",
                crate::values::format_rational(value)
            ),
            ChainViolation::NotKeyPolynomial { level, reason } => write!(
                f,
                "Q_{level} is not a key polynomial for the prefix valuation: {reason}"
            ),
        }
    }
}

impl std::error::Error for ChainViolation {}

impl From<ChainViolation> for Error {
    fn from(v: ChainViolation) -> Self {
        Error::Domain(format!("invalid chain: {v}"))
    }
}

/// A validated chain-represented valuation of Q_p(X).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuationChain {
    p: u64,
    levels: Vec<Level>,
}

impl ChainSpec {
    /// Checks every chain invariant and reports the first violation.
    ///
    /// Besides degree and value growth, each `Q_i` (`i >= 1`) must be a
    /// key polynomial for the prefix valuation: its `Q_{i-1}`-expansion has
    /// leading coefficient 1, its first and last terms attain the
    /// truncation minimum, and its residual polynomial is irreducible. The
    /// irreducibility part is skipped when the frame of `Q_{i-1}` lies
    /// outside the supported residue-field depth.
    pub fn validate(&self) -> std::result::Result<ValuationChain, ChainViolation> {
        if !is_prime(self.p) {
            return Err(ChainViolation::NotPrime(self.p));
        }
        if self.levels.is_empty() {
            return Err(ChainViolation::Empty);
        }
        let mut chain = ValuationChain {
            p: self.p,
            levels: Vec::with_capacity(self.levels.len()),
        };
        for (i, (key, value)) in self.levels.iter().enumerate() {
            if !key.is_monic() {
                return Err(ChainViolation::NotMonic { level: i });
            }
            let deg = key.degree().unwrap();
            if i == 0 && deg != 1 {
                return Err(ChainViolation::FirstNotLinear);
            }
            if i > 0 && deg <= chain.top().key.degree().unwrap() {
                return Err(ChainViolation::DegreeNotIncreasing { level: i });
            }
            let ExtValue::Finite(value) = value else {
                return Err(ChainViolation::InfiniteValue { level: i });
            };
            if i > 0 {
                let prefix_value = chain.eval(key);
                if prefix_value >= ExtValue::Finite(value.clone()) {
                    return Err(ChainViolation::ValueGrowth {
                        level: i,
                        prefix_value,
                        value: value.clone(),
                    });
                }
                check_key(&chain, key).map_err(|reason| ChainViolation::NotKeyPolynomial {
                    level: i,
                    reason,
                })?;
            }
            chain.levels.push(Level {
                key: key.clone(),
                value: value.clone(),
            });
        }
        Ok(chain)
    }
}

/// Key-polynomial test for `key` against the top level of `chain`.
fn check_key(chain: &ValuationChain, key: &Poly) -> std::result::Result<(), String> {
    let top = chain.top();
    let n = top.key.degree().unwrap();
    let deg = key.degree().unwrap();
    if deg % n != 0 {
        return Err(format!("degree {deg} is not a multiple of deg Q = {n}"));
    }
    let d = deg / n;
    let exp = key.q_expansion(&top.key).map_err(|e| e.to_string())?;
    let terms: Vec<ExtValue> = exp
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, f)| &chain.eval(f) + &ExtValue::Finite(&top.value * BigRational::from_integer(j.into())))
        .collect();
    let min = terms.iter().min().unwrap();
    if &terms[d] != min {
        return Err("the leading expansion term does not attain the truncation minimum".into());
    }
    if &terms[0] != min {
        return Err("the constant expansion term does not attain the truncation minimum".into());
    }
    let level = chain.levels.len() - 1;
    let group = ValueGroup::generated_by(chain.levels[..level].iter().map(|l| &l.value));
    let e = least_multiplier(&ExtValue::Finite(top.value.clone()), group).map_err(|e| e.to_string())?;
    if d as u64 % e != 0 {
        return Err(format!("expansion length {d} is not a multiple of e = {e}"));
    }
    match Frame::build(chain, &top.key) {
        Ok(frame) => {
            let g = frame.residual_polynomial(key).map_err(|e| e.to_string())?;
            if !g.is_irreducible() {
                return Err(format!("residual polynomial {g} is reducible over {}", frame.residue_field()));
            }
            Ok(())
        }
        Err(Error::Unsupported(_)) => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

impl ValuationChain {
    /// Validates a spec; the error carries the first violated invariant.
    pub fn new(p: u64, levels: Vec<(Poly, BigRational)>) -> Result<Self> {
        let spec = ChainSpec {
            p,
            levels: levels.into_iter().map(|(q, g)| (q, ExtValue::Finite(g))).collect(),
        };
        Ok(spec.validate()?)
    }

    /// The Gauss-type valuation `[(X - c, gamma)]`.
    pub fn monomial(p: u64, center: BigRational, gamma: BigRational) -> Result<Self> {
        check_prime(p)?;
        ValuationChain::new(p, vec![(Poly::linear(center), gamma)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Number of levels minus one.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top(&self) -> &Level {
        self.levels.last().expect("chains are nonempty")
    }

    pub fn to_spec(&self) -> ChainSpec {
        ChainSpec {
            p: self.p,
            levels: self
                .levels
                .iter()
                .map(|l| (l.key.clone(), ExtValue::Finite(l.value.clone())))
                .collect(),
        }
    }

    /// The chain through level `i`; `None` if out of range.
    pub fn prefix(&self, i: usize) -> Option<ValuationChain> {
        (i < self.levels.len()).then(|| ValuationChain {
            p: self.p,
            levels: self.levels[..=i].to_vec(),
        })
    }

    /// Level index of a chain key polynomial.
    pub fn level_of(&self, q: &Poly) -> Option<usize> {
        self.levels.iter().position(|l| &l.key == q)
    }

    pub(crate) fn require_level(&self, q: &Poly) -> Result<usize> {
        self.level_of(q)
            .ok_or_else(|| Error::domain(format!("{q} is not a key polynomial of the chain")))
    }

    /// The center `c` of `Q_0 = X - c`.
    pub fn center(&self) -> BigRational {
        -self.levels[0].key.coeff(0)
    }

    /// `w(f)`; `+inf` exactly for `f = 0`.
    pub fn eval(&self, f: &Poly) -> ExtValue {
        self.eval_through(self.levels.len() - 1, f)
    }

    pub(crate) fn eval_through(&self, level: usize, f: &Poly) -> ExtValue {
        if f.is_zero() {
            return ExtValue::Infinity;
        }
        if level == 0 {
            let gamma = &self.levels[0].value;
            let taylor = f.shift(&self.center());
            return taylor
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| &valuation_ext(c, self.p) + &ExtValue::Finite(gamma * BigRational::from_integer(j.into())))
                .min()
                .unwrap();
        }
        let Level { key, value } = &self.levels[level];
        if f.degree() < key.degree() {
            return self.eval_through(level - 1, f);
        }
        let exp = f.q_expansion(key).expect("chain keys are monic");
        exp.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| &self.eval_through(level - 1, c) + &ExtValue::Finite(value * BigRational::from_integer(j.into())))
            .min()
            .unwrap()
    }

    /// `max_b (w(f) - w(d_b f)) / b` over `1 <= b <= deg f`, skipping
    /// vanishing derivatives.
    pub fn epsilon(&self, f: &Poly) -> Result<ExtValue> {
        let deg = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::domain("epsilon requires deg f >= 1")),
        };
        let wf = self.eval(f);
        let wf = wf.finite().expect("nonzero polynomial has finite value");
        let mut best: Option<BigRational> = None;
        for b in 1..=deg {
            let db = f.hasse_unchecked(b);
            let ExtValue::Finite(wd) = self.eval(&db) else {
                continue;
            };
            let cand = (wf - wd) / BigRational::from_integer(b.into());
            if best.as_ref().map_or(true, |x| &cand > x) {
                best = Some(cand);
            }
        }
        Ok(ExtValue::Finite(best.expect("the top derivative is a nonzero constant")))
    }

    /// The optimizing-root value `delta(f)`, which equals `epsilon(f)` for
    /// monic `f`.
    pub fn delta_opt(&self, f: &Poly) -> Result<ExtValue> {
        if !f.is_monic() {
            return Err(Error::domain("delta requires a monic polynomial"));
        }
        self.epsilon(f)
    }

    pub fn truncation(&self, q: &Poly) -> Result<TruncationHandle<'_>> {
        if !q.is_monic() || q.degree() == Some(0) {
            return Err(Error::domain("truncator Q must be monic of degree >= 1"));
        }
        Ok(TruncationHandle {
            chain: self,
            truncator: q.clone(),
            truncator_value: self.eval(q),
        })
    }

    /// Appends `(q, gamma)`; requires `deg q` above the top degree and
    /// `gamma > w(q)`.
    pub fn augment(&self, q: &Poly, gamma: &BigRational) -> Result<ValuationChain> {
        if !q.is_monic() {
            return Err(Error::domain("augmentation key must be monic"));
        }
        if q.degree() <= self.top().key.degree() {
            return Err(Error::domain(format!(
                "augmentation key degree must exceed deg Q_{} = {}",
                self.depth(),
                self.top().key.degree().unwrap()
            )));
        }
        let wq = self.eval(q);
        if wq >= ExtValue::Finite(gamma.clone()) {
            return Err(Error::domain(format!(
                "augmentation value {} must exceed w(Q) = {wq}",
                crate::values::format_rational(gamma)
            )));
        }
        let mut spec = self.to_spec();
        spec.levels.push((q.clone(), ExtValue::Finite(gamma.clone())));
        Ok(spec.validate()?)
    }
}

/// `w` together with a monic truncator `Q`, evaluating `w_Q`.
#[derive(Debug, Clone)]
pub struct TruncationHandle<'a> {
    chain: &'a ValuationChain,
    truncator: Poly,
    truncator_value: ExtValue,
}

impl TruncationHandle<'_> {
    pub fn truncator(&self) -> &Poly {
        &self.truncator
    }

    pub fn chain(&self) -> &ValuationChain {
        self.chain
    }

    /// Values `w(f_i Q^i)` of the expansion terms, `+inf` for zero terms.
    pub fn term_values(&self, f: &Poly) -> Vec<ExtValue> {
        let exp = f.q_expansion(&self.truncator).expect("truncator checked monic");
        exp.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    ExtValue::Infinity
                } else {
                    &self.chain.eval(c) + &self.truncator_value.scale(i)
                }
            })
            .collect()
    }

    /// `w_Q(f) = min_i w(f_i) + i w(Q)`.
    pub fn eval(&self, f: &Poly) -> ExtValue {
        self.term_values(f).into_iter().min().unwrap_or(ExtValue::Infinity)
    }

    /// The indices attaining the minimum and the largest of them.
    pub fn support_and_top(&self, f: &Poly) -> Result<(Vec<usize>, usize)> {
        if f.is_zero() {
            return Err(Error::domain("support of the zero polynomial"));
        }
        let terms = self.term_values(f);
        let min = terms.iter().min().unwrap().clone();
        let support: Vec<usize> = (0..terms.len()).filter(|&i| terms[i] == min).collect();
        let top = *support.last().unwrap();
        Ok((support, top))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex13, sqrt3};
    use crate::values::{int, rat};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn fin(r: BigRational) -> ExtValue {
        ExtValue::Finite(r)
    }

    #[test]
    fn validate_examples() {
        let bad = ChainSpec {
            p: 3,
            levels: vec![(p("X"), ExtValue::zero()), (p("X^2+1"), ExtValue::zero())],
        };
        assert!(matches!(
            bad.validate(),
            Err(ChainViolation::ValueGrowth { level: 1, .. })
        ));
        let _ = ex13();
        let _ = sqrt3();
    }

    #[test]
    fn validate_rejects_structural_problems() {
        let cases = [
            (4, vec![(p("X"), ExtValue::zero())]),
            (3, vec![]),
            (3, vec![(p("X^2"), ExtValue::zero())]),
            (3, vec![(p("2X"), ExtValue::zero())]),
            (3, vec![(p("X"), ExtValue::Infinity)]),
            (3, vec![(p("X"), ExtValue::zero()), (p("X+1"), ExtValue::from_int(1))]),
        ];
        let expected = [
            ChainViolation::NotPrime(4),
            ChainViolation::Empty,
            ChainViolation::FirstNotLinear,
            ChainViolation::NotMonic { level: 0 },
            ChainViolation::InfiniteValue { level: 0 },
            ChainViolation::DegreeNotIncreasing { level: 1 },
        ];
        for ((pr, levels), want) in cases.into_iter().zip(expected) {
            assert_eq!(ChainSpec { p: pr, levels }.validate().unwrap_err(), want);
        }
    }

    #[test]
    fn validate_rejects_non_key_augmentations() {
        // X^2+2 = (X-1)(X+1) mod 3 has reducible residual polynomial.
        let spec = ChainSpec {
            p: 3,
            levels: vec![(p("X"), ExtValue::zero()), (p("X^2+2"), ExtValue::Finite(rat(1, 2)))],
        };
        assert!(matches!(
            spec.validate(),
            Err(ChainViolation::NotKeyPolynomial { level: 1, .. })
        ));
        // X^2+3 at value 1: the constant term does not attain the minimum.
        let spec = ChainSpec {
            p: 3,
            levels: vec![(p("X"), ExtValue::zero()), (p("X^2+3"), ExtValue::from_int(1))],
        };
        assert!(matches!(
            spec.validate(),
            Err(ChainViolation::NotKeyPolynomial { level: 1, .. })
        ));
    }

    #[test]
    fn eval_examples() {
        let w = ex13();
        assert_eq!(w.eval(&p("X^2+1")), fin(rat(1, 2)));
        assert_eq!(w.eval(&p("X^2+2")), ExtValue::zero());
        assert_eq!(w.eval(&Poly::zero()), ExtValue::Infinity);
        assert_eq!(sqrt3().eval(&p("3X")), fin(rat(3, 2)));
    }

    #[test]
    fn shifted_center() {
        let w = ValuationChain::monomial(5, int(2), rat(1, 3)).unwrap();
        assert_eq!(w.eval(&p("X-2")), fin(rat(1, 3)));
        assert_eq!(w.eval(&p("X")), ExtValue::zero());
        assert_eq!(w.eval(&p("(X-2)^3-5")), ExtValue::from_int(1));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(ex13().epsilon(&p("X^2+1")).unwrap(), fin(rat(1, 2)));
        assert_eq!(sqrt3().epsilon(&p("X^2-3")).unwrap(), ExtValue::from_int(1));
        let w = ValuationChain::monomial(3, int(-4), rat(2, 3)).unwrap();
        assert_eq!(w.epsilon(&p("X+4")).unwrap(), w.eval(&p("X+4")));
        assert!(ex13().epsilon(&p("7")).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(ex13().delta_opt(&p("X^2+1")).unwrap(), fin(rat(1, 2)));
        let w = ValuationChain::monomial(3, int(0), rat(1, 2)).unwrap();
        assert_eq!(w.delta_opt(&p("X")).unwrap(), fin(rat(1, 2)));
        assert_eq!(sqrt3().delta_opt(&p("X^2-3")).unwrap(), ExtValue::from_int(1));
        assert!(sqrt3().delta_opt(&p("2X^2-3")).is_err());
    }

    #[test]
    fn truncation_examples() {
        let w = ex13();
        let t = w.truncation(&p("X")).unwrap();
        assert_eq!(t.eval(&p("X^2+1")), ExtValue::zero());
        assert_eq!(t.eval(&p("X^2+2")), ExtValue::zero());
        let w2 = sqrt3();
        assert_eq!(w2.truncation(&p("X")).unwrap().eval(&p("X^2-3")), ExtValue::from_int(1));
        assert!(w.truncation(&p("2X")).is_err());
    }

    #[test]
    fn support_examples() {
        let w = ex13();
        let t = w.truncation(&p("X")).unwrap();
        assert_eq!(t.support_and_top(&p("X^2+1")).unwrap(), (vec![0, 2], 2));
        let w2 = sqrt3();
        let t2 = w2.truncation(&p("X")).unwrap();
        assert_eq!(t2.support_and_top(&p("X^2-3")).unwrap(), (vec![0, 2], 2));
        let q = p("X^2+1");
        assert_eq!(w.truncation(&q).unwrap().support_and_top(&q).unwrap(), (vec![1], 1));
        assert!(t.support_and_top(&Poly::zero()).is_err());
    }

    #[test]
    fn augment_examples() {
        let base = ValuationChain::monomial(3, int(0), rat(1, 2)).unwrap();
        assert_eq!(base.augment(&p("X^2-3"), &rat(3, 2)).unwrap(), sqrt3());
        let gauss = ValuationChain::monomial(3, int(0), int(0)).unwrap();
        assert_eq!(gauss.augment(&p("X^2+1"), &rat(1, 2)).unwrap(), ex13());
        assert!(matches!(gauss.augment(&p("X^2+1"), &int(0)), Err(Error::Domain(_))));
        assert!(gauss.augment(&p("X+1"), &int(5)).is_err());
    }

    #[test]
    fn prefix_and_levels() {
        let w = ex13();
        assert_eq!(w.depth(), 1);
        assert_eq!(w.level_of(&p("X^2+1")), Some(1));
        assert_eq!(w.level_of(&p("X^2+2")), None);
        assert_eq!(w.prefix(0).unwrap().levels().len(), 1);
        assert!(w.prefix(2).is_none());
    }

    #[test]
    fn values_can_decrease_below_zero() {
        // With w(X) < 0 the key values need not increase, while epsilon does.
        let w = ValuationChain::new(3, vec![(p("X"), rat(-1, 2)), (p("X^2+1/3"), rat(-3, 4))]).unwrap();
        assert!(w.eval(&p("X^2+1/3")) < w.eval(&p("X")));
        assert_eq!(w.epsilon(&p("X")).unwrap(), fin(rat(-1, 2)));
        assert_eq!(w.epsilon(&p("X^2+1/3")).unwrap(), fin(rat(-1, 4)));
    }
}
