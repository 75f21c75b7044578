//! Root-side checks that work from coefficients and `p` alone: Newton
//! polygons, valuations of root differences via resultants, and direct
//! tests of valuation axioms and of distinguished pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par::Strategy;
use crate::poly::{resultant, Poly};
use crate::values::{check_prime, format_rational, rational_valuation, ExtValue};

/// Finite values with positive multiplicities, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SlopeMultiset {
    entries: Vec<(BigRational, usize)>,
}

impl SlopeMultiset {
    pub fn new(items: impl IntoIterator<Item = (BigRational, usize)>) -> Self {
        let mut v: Vec<(BigRational, usize)> = items.into_iter().filter(|(_, m)| *m > 0).collect();
        v.sort();
        let mut entries: Vec<(BigRational, usize)> = Vec::with_capacity(v.len());
        for (val, m) in v {
            match entries.last_mut() {
                Some((last, n)) if *last == val => *n += m,
                _ => entries.push((val, m)),
            }
        }
        SlopeMultiset { entries }
    }

    pub fn entries(&self) -> &[(BigRational, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max(&self) -> Option<&BigRational> {
        self.entries.last().map(|(v, _)| v)
    }

    pub fn min(&self) -> Option<&BigRational> {
        self.entries.first().map(|(v, _)| v)
    }

    pub fn union(&self, other: &Self) -> Self {
        SlopeMultiset::new(self.entries.iter().chain(&other.entries).cloned())
    }
}

impl fmt::Display for SlopeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(v, m)| format!("{} x {m}", format_rational(v)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize)]
struct SlopeEntry {
    value: String,
    multiplicity: usize,
}

impl Serialize for SlopeMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<SlopeEntry> = self
            .entries
            .iter()
            .map(|(value, m)| SlopeEntry {
                value: format_rational(value),
                multiplicity: *m,
            })
            .collect();
        v.serialize(s)
    }
}

/// Valuations of the nonzero roots of a polynomial and the number of zero
/// roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub slopes: SlopeMultiset,
    pub zero_roots: usize,
}

/// Root valuations from the lower convex hull of `(i, v_p(c_i))`.
pub fn newton_polygon(f: &Poly, p: u64) -> Result<NewtonPolygon> {
    check_prime(p)?;
    if f.is_zero() {
        return Err(Error::domain("Newton polygon of the zero polynomial"));
    }
    let points: Vec<(i64, BigRational)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| rational_valuation(c, p).map(|v| (i as i64, BigRational::from_integer(v.into()))))
        .collect();
    let zero_roots = points[0].0 as usize;
    let mut hull: Vec<(i64, BigRational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // Drop b if it lies on or above the segment from a to pt.
            let lhs = (&b.1 - &a.1) * BigRational::from_integer((pt.0 - a.0).into());
            let rhs = (&pt.1 - &a.1) * BigRational::from_integer((b.0 - a.0).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let slopes = SlopeMultiset::new(hull.windows(2).map(|w| {
        let len = w[1].0 - w[0].0;
        (-(&w[1].1 - &w[0].1) / BigRational::from_integer(len.into()), len as usize)
    }));
    Ok(NewtonPolygon { slopes, zero_roots })
}

/// Newton interpolation through `(x_i, y_i)` with distinct integer `x_i`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        out = &(&out * &Poly::linear(xs[i].clone())) + &Poly::constant(dd[i].clone());
    }
    out
}

/// `R(T) = Res_X(f(X), g(X + T))`, whose roots are the differences
/// `beta - theta` over roots `theta` of `f` and `beta` of `g`.
pub fn difference_resultant(f: &Poly, g: &Poly) -> Result<Poly> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) if m >= 1 && n >= 1 => (m, n),
        _ => return Err(Error::domain("root differences need polynomials of degree >= 1")),
    };
    let xs: Vec<BigRational> = (0..=(m * n) as i64).map(|t| BigRational::from_integer(t.into())).collect();
    let ys = xs
        .iter()
        .map(|t| resultant(f, &g.shift(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&xs, &ys))
}

/// The multiset of `v(theta - beta)` over all pairs of roots of `f` and
/// `g`. Shared roots are reported as [`Error::SharedRoot`] carrying the
/// nonzero differences.
pub fn root_difference_valuations(f: &Poly, g: &Poly, p: u64) -> Result<SlopeMultiset> {
    check_prime(p)?;
    let r = difference_resultant(f, g)?;
    if r.is_zero() {
        return Err(Error::SharedRoot {
            zero_roots: 0,
            off_diagonal: SlopeMultiset::default(),
        });
    }
    let np = newton_polygon(&r, p)?;
    if np.zero_roots > 0 {
        return Err(Error::SharedRoot {
            zero_roots: np.zero_roots,
            off_diagonal: np.slopes,
        });
    }
    Ok(np.slopes)
}

/// Off-diagonal differences `v(theta_i - theta_j)`, `i != j`.
fn self_differences(f: &Poly, p: u64) -> Result<SlopeMultiset> {
    match root_difference_valuations(f, f, p) {
        Err(Error::SharedRoot { off_diagonal, .. }) => Ok(off_diagonal),
        Err(e) => Err(e),
        Ok(_) => Err(Error::Internal("a polynomial shares its roots with itself".into())),
    }
}

/// Largest `v(theta - beta)` over roots, `+inf` on a shared root.
fn max_difference(f: &Poly, g: &Poly, p: u64) -> Result<ExtValue> {
    match root_difference_valuations(f, g, p) {
        Ok(s) => Ok(ExtValue::Finite(s.max().expect("nonempty").clone())),
        Err(Error::SharedRoot { .. }) => Ok(ExtValue::Infinity),
        Err(e) => Err(e),
    }
}

/// `sup v(theta - b)` over `b` in `Q_p` for a root `theta` of an
/// irreducible monic `f` of degree `>= 2`. For such `b` every conjugate
/// of `theta` is at the same distance, so `v(theta - b) = v(f(b)) / deg f`.
/// Returns `None` if the search does not settle within `max_depth` digits.
pub fn rational_approximation_sup(f: &Poly, p: u64, max_depth: usize) -> Result<Option<BigRational>> {
    check_prime(p)?;
    let n = match f.degree() {
        Some(n) if n >= 2 && f.is_monic() => n,
        _ => return Err(Error::domain("approximation sup needs a monic polynomial of degree >= 2")),
    };
    let np = newton_polygon(f, p)?;
    if np.zero_roots > 0 {
        return Ok(None);
    }
    let value = |b: &BigRational| -> Option<BigRational> {
        rational_valuation(&f.eval(b), p)
            .map(|v| BigRational::new(v.into(), BigInt::from(n)))
    };
    let start = np.slopes.min().unwrap().ceil().to_integer().to_i64().unwrap();
    let pp = BigRational::from_integer(p.into());
    let p_pow = |k: i64| -> BigRational {
        if k >= 0 {
            num_traits::pow(pp.clone(), k as usize)
        } else {
            num_traits::pow(pp.recip(), k.unsigned_abs() as usize)
        }
    };
    // One live residue class b + p^k Z_p at a time: two centers both within
    // p^-k of theta lie in the same class.
    let mut b = BigRational::zero();
    let mut k = start;
    let Some(mut v) = value(&b) else { return Ok(None) };
    for _ in 0..max_depth {
        if v < BigRational::from_integer(k.into()) {
            return Ok(Some(v));
        }
        let step = p_pow(k);
        let next = BigRational::from_integer((k + 1).into());
        let mut best = v.clone();
        let mut live = None;
        for d in 0..p {
            let c = &b + &step * BigRational::from_integer(d.into());
            let Some(vc) = value(&c) else { return Ok(None) };
            if vc >= next {
                live = Some((c, vc));
                break;
            }
            if vc > best {
                best = vc;
            }
        }
        match live {
            Some((c, vc)) => {
                b = c;
                v = vc;
                k += 1;
            }
            None => return Ok(Some(best)),
        }
    }
    Ok(None)
}

/// Per-root multiset of differences to the other roots of an irreducible
/// `f`: counts of the off-diagonal multiset divided by `deg f`.
fn per_root_differences(f: &Poly, p: u64) -> Result<Vec<(BigRational, BigRational)>> {
    let n = f.degree().unwrap();
    if n == 1 {
        return Ok(Vec::new());
    }
    let s = self_differences(f, p)?;
    Ok(s.entries()
        .iter()
        .map(|(v, m)| (v.clone(), BigRational::new((*m).into(), n.into())))
        .collect())
}

/// The optimizing-root value of monic `f` for the valuation attached to
/// the minimal pair `(alpha, delta)`, `alpha` a root of the irreducible
/// monic `key` and `delta` fixed by `w(key) = key_value`:
/// `delta + sum_j min(delta, v(alpha - alpha_j)) = key_value`. The result
/// is `max_theta min(delta, v(theta - alpha))` over roots of `f`.
pub fn optimizing_root_value(f: &Poly, key: &Poly, key_value: &BigRational, p: u64) -> Result<ExtValue> {
    check_prime(p)?;
    if !f.is_monic() || f.degree() == Some(0) || !key.is_monic() || key.degree() == Some(0) {
        return Err(Error::domain("optimizing roots need monic polynomials of degree >= 1"));
    }
    let delta = solve_delta(&per_root_differences(key, p)?, key_value);
    let reach = max_difference(f, key, p)?;
    Ok(std::cmp::min(reach, ExtValue::Finite(delta)))
}

fn solve_delta(diffs: &[(BigRational, BigRational)], gamma: &BigRational) -> BigRational {
    let mut slope = BigRational::one() + diffs.iter().map(|(_, c)| c.clone()).sum::<BigRational>();
    let mut offset = BigRational::zero();
    for (d, c) in diffs {
        if gamma <= &(&slope * d + &offset) {
            break;
        }
        slope -= c;
        offset += c * d;
    }
    (gamma - offset) / slope
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleVerdict {
    Pass,
    Fail,
    Inconclusive,
}

impl OracleVerdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            OracleVerdict::Pass => Some(true),
            OracleVerdict::Fail => Some(false),
            OracleVerdict::Inconclusive => None,
        }
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleVerdict::Pass => "pass",
            OracleVerdict::Fail => "fail",
            OracleVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of the root-side distinguished-pair test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub verdict: OracleVerdict,
    /// `v(theta - alpha)`, largest over roots of `Q`.
    pub approximation: String,
    /// Best value reached by a catalog member of degree `< deg F`.
    pub catalog_lower_bound: Option<String>,
    /// Proven bound for every `beta` of degree `< deg F`.
    pub upper_bound: Option<String>,
    /// Catalog member refuting the pair, if any.
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

/// Depth cap for the residue-class search in `Q_p`.
const SUP_SEARCH_DEPTH: usize = 64;

/// Direct test of the distinguished-pair definition for roots `theta` of
/// `F` and `alpha` of `Q`: `v(theta - alpha)` is the largest distance from
/// `theta` to elements of degree `< deg F`, and nothing of degree
/// `< deg Q` comes as close. Bounds come from catalog members, exact
/// searches over `Q_p`, and Krasner's lemma.
pub fn distinguished_pair_root_oracle(f: &Poly, q: &Poly, p: u64, catalog: &[Poly]) -> Result<OracleReport> {
    check_prime(p)?;
    let (df, dq) = match (f.degree(), q.degree()) {
        (Some(a), Some(b)) if f.is_monic() && q.is_monic() && b >= 1 => (a, b),
        _ => return Err(Error::domain("F and Q must be monic of degree >= 1")),
    };
    if df <= dq {
        return Err(Error::domain("distinguished pairs need deg F > deg Q"));
    }
    let mut notes = Vec::new();
    let report = |verdict, a: &ExtValue, lower: Option<&ExtValue>, upper: Option<&BigRational>, witness: Option<&Poly>, notes: Vec<String>| OracleReport {
        verdict,
        approximation: a.to_string(),
        catalog_lower_bound: lower.map(|x| x.to_string()),
        upper_bound: upper.map(format_rational),
        witness: witness.map(|w| w.to_string()),
        notes,
    };
    let a = max_difference(f, q, p)?;
    let ExtValue::Finite(a_fin) = a.clone() else {
        notes.push("F and Q share a root".into());
        return Ok(report(OracleVerdict::Inconclusive, &a, None, None, None, notes));
    };

    // Condition (ii): catalog lower bound versus proven upper bound.
    let mut lower: Option<(ExtValue, &Poly)> = None;
    for g in catalog.iter().filter(|g| g.degree().is_some_and(|d| d >= 1 && d < df)) {
        let v = max_difference(f, g, p)?;
        if lower.as_ref().map_or(true, |(b, _)| &v > b) {
            lower = Some((v, g));
        }
    }
    let lower_val = lower.as_ref().map(|(v, _)| v.clone());
    if let Some((v, g)) = &lower {
        if *v > a {
            notes.push(format!("catalog member {g} approximates F better than Q"));
            return Ok(report(OracleVerdict::Fail, &a, lower_val.as_ref(), None, Some(g), notes));
        }
    }
    let upper = if df == 2 {
        let sup = rational_approximation_sup(f, p, SUP_SEARCH_DEPTH)?;
        if sup.is_some() {
            notes.push("upper bound: exact supremum over Q_p".into());
        }
        sup
    } else {
        notes.push("upper bound: Krasner radius of F".into());
        self_differences(f, p)?.max().cloned()
    };
    let cond2 = match &upper {
        Some(u) if &a_fin >= u => true,
        Some(u) if df == 2 && &a_fin < u => {
            notes.push("an element of Q_p approximates F better than Q".into());
            return Ok(report(OracleVerdict::Fail, &a, lower_val.as_ref(), Some(u), None, notes));
        }
        _ => false,
    };
    if !cond2 {
        notes.push("condition (ii) not settled".into());
        return Ok(report(OracleVerdict::Inconclusive, &a, lower_val.as_ref(), upper.as_ref(), None, notes));
    }

    // Condition (iii): nothing of degree < deg Q reaches v(theta - alpha).
    let cond3 = if dq == 1 {
        Some(true)
    } else if self_differences(q, p)?.max().is_some_and(|w| &a_fin > w) {
        notes.push("condition (iii): beyond the Krasner radius of Q".into());
        Some(true)
    } else if let Some(g) = catalog
        .iter()
        .filter(|g| g.degree().is_some_and(|d| d >= 1 && d < dq))
        .find(|g| max_difference(f, g, p).is_ok_and(|v| v >= a))
    {
        notes.push(format!("catalog member {g} of degree < deg Q reaches v(theta - alpha)"));
        return Ok(report(OracleVerdict::Fail, &a, lower_val.as_ref(), upper.as_ref(), Some(g), notes));
    } else if dq == 2 {
        match rational_approximation_sup(f, p, SUP_SEARCH_DEPTH)? {
            Some(s) => {
                notes.push("condition (iii): exact supremum over Q_p".into());
                Some(s < a_fin)
            }
            None => None,
        }
    } else {
        None
    };
    let verdict = match cond3 {
        Some(true) => OracleVerdict::Pass,
        Some(false) => OracleVerdict::Fail,
        None => {
            notes.push("condition (iii) not settled".into());
            OracleVerdict::Inconclusive
        }
    };
    Ok(report(verdict, &a, lower_val.as_ref(), upper.as_ref(), None, notes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomKind {
    Multiplicativity,
    UltrametricInequality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub index: usize,
    pub f: String,
    pub g: String,
    pub kind: AxiomKind,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `V(fg) = V(f) + V(g)` and `V(f + g) >= min(V(f), V(g))` on each
/// pair.
pub fn check_valuation_axioms<V>(evaluator: V, pairs: &[(Poly, Poly)], strategy: Strategy) -> AxiomReport
where
    V: Fn(&Poly) -> ExtValue + Sync + Send,
{
    let indexed: Vec<(usize, &(Poly, Poly))> = pairs.iter().enumerate().collect();
    let per_pair = strategy.map(&indexed, |(i, (f, g))| {
        let (vf, vg) = (evaluator(f), evaluator(g));
        let mut out = Vec::new();
        let prod = evaluator(&(f * g));
        let sum = &vf + &vg;
        if prod != sum {
            out.push(AxiomViolation {
                index: *i,
                f: f.to_string(),
                g: g.to_string(),
                kind: AxiomKind::Multiplicativity,
                lhs: prod.to_string(),
                rhs: sum.to_string(),
            });
        }
        let add = evaluator(&(f + g));
        let floor = std::cmp::min(vf, vg);
        if add < floor {
            out.push(AxiomViolation {
                index: *i,
                f: f.to_string(),
                g: g.to_string(),
                kind: AxiomKind::UltrametricInequality,
                lhs: add.to_string(),
                rhs: floor.to_string(),
            });
        }
        out
    });
    AxiomReport {
        checked: pairs.len(),
        violations: per_pair.into_iter().flatten().collect(),
    }
}

/// Monic polynomials of degree `d` with integer coefficients in
/// `[-H p^a, H p^a]`, ordered lexicographically from the `X^{d-1}`
/// coefficient down to the constant, each ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicEnumeration {
    degree: usize,
    bound: BigInt,
    width: u64,
    len: u64,
}

impl MonicEnumeration {
    pub fn new(degree: usize, height: u64, p: u64, p_power_cap: u32) -> Result<Self> {
        check_prime(p)?;
        if degree == 0 {
            return Err(Error::domain("enumeration degree must be >= 1"));
        }
        let bound = BigInt::from(height) * num_traits::pow(BigInt::from(p), p_power_cap as usize);
        let width = (&bound * 2u32 + 1u32)
            .to_u64()
            .ok_or_else(|| Error::domain("enumeration too large"))?;
        let len = width
            .checked_pow(degree as u32)
            .ok_or_else(|| Error::domain("enumeration too large"))?;
        Ok(MonicEnumeration {
            degree,
            bound,
            width,
            len,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The element at position `idx`.
    pub fn get(&self, mut idx: u64) -> Option<Poly> {
        if idx >= self.len {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); self.degree + 1];
        coeffs[self.degree] = BigRational::one();
        for slot in coeffs.iter_mut().take(self.degree) {
            let digit = idx % self.width;
            idx /= self.width;
            *slot = BigRational::from_integer(BigInt::from(digit) - &self.bound);
        }
        Some(Poly::new(coeffs))
    }

    pub fn iter(&self) -> impl Iterator<Item = Poly> + '_ {
        (0..self.len).map(|i| self.get(i).unwrap())
    }
}

pub fn enumerate_monic(degree: usize, height: u64, p: u64, p_power_cap: u32) -> Result<MonicEnumeration> {
    MonicEnumeration::new(degree, height, p, p_power_cap)
}
