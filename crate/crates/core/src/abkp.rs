//! `psi(Q)` membership, `alpha(Q)`, refutation of abstract key polynomials,
//! distinguished pairs and saturated distinguished chains.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::MonicEnumeration;
use crate::par::Strategy;
use crate::poly::Poly;
use crate::valchain::ValuationChain;
use crate::values::{format_rational, ExtValue};

/// `alpha(Q)`, the least degree of a polynomial on which `w_Q < w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Alpha {
    Degree(usize),
    /// `w_Q = w`.
    Infinite,
    /// `Q` is not a key polynomial of the chain.
    Unknown,
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Degree(d) => write!(f, "{d}"),
            Alpha::Infinite => f.write_str("inf"),
            Alpha::Unknown => f.write_str("unknown"),
        }
    }
}

/// Read off the chain: the degree of the next key polynomial, or infinite
/// at the top level.
pub fn alpha_invariant(chain: &ValuationChain, q: &Poly) -> Alpha {
    match chain.level_of(q) {
        None => Alpha::Unknown,
        Some(i) => match chain.levels().get(i + 1) {
            Some(next) => Alpha::Degree(next.key.degree().unwrap()),
            None => Alpha::Infinite,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiVerdict {
    pub member: bool,
    pub wq_value: ExtValue,
    pub w_value: ExtValue,
    /// `alpha(Q)`, when `F` shows a discrepancy but has larger degree.
    pub degree_witness: Option<usize>,
}

/// Whether monic `F` lies in `psi(Q)`: `w_Q(F) < w(F)` and
/// `deg F = alpha(Q)`.
pub fn psi_member(chain: &ValuationChain, q: &Poly, f: &Poly) -> Result<PsiVerdict> {
    if !f.is_monic() {
        return Err(Error::domain("psi membership requires a monic F"));
    }
    chain.require_level(q)?;
    let alpha = alpha_invariant(chain, q);
    let wq_value = chain.truncation(q)?.eval(f);
    let w_value = chain.eval(f);
    let discrepancy = wq_value < w_value;
    let deg = f.degree().unwrap();
    let (member, degree_witness) = match alpha {
        Alpha::Degree(a) if discrepancy && deg == a => (true, None),
        Alpha::Degree(a) if discrepancy && deg > a => (false, Some(a)),
        _ => (false, None),
    };
    Ok(PsiVerdict {
        member,
        wq_value,
        w_value,
        degree_witness,
    })
}

/// Search space for [`falsify_abkp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub height: u64,
    pub p_power_cap: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Falsification {
    /// `witness` has smaller degree than `Q` and `epsilon(witness) >= epsilon(Q)`.
    Disproved { witness: Poly, epsilon: ExtValue },
    /// Nothing found among `checked` candidates; not a proof.
    NotDisproved { checked: u64 },
}

const CHUNK: u64 = 4096;

/// Looks for a monic `f` with `deg f < deg Q` and `epsilon(f) >= epsilon(Q)`,
/// by degree and then in enumeration order. The first witness in that
/// order is returned regardless of strategy.
pub fn falsify_abkp(
    chain: &ValuationChain,
    q: &Poly,
    bounds: SearchBounds,
    strategy: Strategy,
) -> Result<Falsification> {
    let dq = match q.degree() {
        Some(d) if d >= 1 && q.is_monic() => d,
        _ => return Err(Error::domain("Q must be monic of degree >= 1")),
    };
    let target = chain.epsilon(q)?;
    let mut checked = 0u64;
    for d in 1..dq {
        let space = MonicEnumeration::new(d, bounds.height, chain.p(), bounds.p_power_cap)?;
        let mut start = 0;
        while start < space.len() {
            let end = (start + CHUNK).min(space.len());
            let idx: Vec<u64> = (start..end).collect();
            let hit = strategy.find_first(&idx, |&i| {
                let f = space.get(i).unwrap();
                let e = chain.epsilon(&f).expect("degree >= 1");
                (e >= target).then_some((f, e))
            });
            if let Some((witness, epsilon)) = hit {
                return Ok(Falsification::Disproved { witness, epsilon });
            }
            checked += end - start;
            start = end;
        }
    }
    Ok(Falsification::NotDisproved { checked })
}

/// `(F, Q)` is distinguished iff `F` is in `psi(Q)` and `deg F > deg Q`.
/// `F` is assumed to be an abstract key polynomial.
pub fn is_distinguished_pair(chain: &ValuationChain, f: &Poly, q: &Poly) -> Result<bool> {
    if !q.is_monic() {
        return Err(Error::domain("Q must be monic"));
    }
    let v = psi_member(chain, q, f)?;
    Ok(v.member && f.degree() > q.degree())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedLevel {
    pub poly: String,
    pub value: String,
    pub epsilon: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedLink {
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub distinguished: bool,
}

/// `Q_N, ..., Q_0` with their values and `epsilon`, and the verdict of
/// each adjacent link `(Q_i, Q_{i-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub chain: Vec<CertifiedLevel>,
    pub links: Vec<CertifiedLink>,
}

/// Certifies the key polynomials of `chain` as a saturated distinguished
/// chain ending at a linear polynomial.
pub fn saturated_chain(chain: &ValuationChain) -> Result<ChainCertificate> {
    if chain.depth() == 0 {
        return Err(Error::domain("a single-level chain has no distinguished pair"));
    }
    let levels = chain.levels();
    if levels[0].key.degree() != Some(1) {
        return Err(Error::Internal("chain does not start at a linear key".into()));
    }
    let mut out = Vec::new();
    for l in levels.iter().rev() {
        out.push(CertifiedLevel {
            poly: l.key.to_string(),
            value: format_rational(&l.value),
            epsilon: chain.epsilon(&l.key)?.to_string(),
        });
    }
    let mut links = Vec::new();
    for i in (1..levels.len()).rev() {
        let (f, q) = (&levels[i].key, &levels[i - 1].key);
        let distinguished = is_distinguished_pair(chain, f, q)?;
        if !distinguished {
            return Err(Error::domain(format!("({f}, {q}) is not a distinguished pair")));
        }
        links.push(CertifiedLink {
            f: f.to_string(),
            q: q.to_string(),
            distinguished,
        });
    }
    Ok(ChainCertificate { chain: out, links })
}
