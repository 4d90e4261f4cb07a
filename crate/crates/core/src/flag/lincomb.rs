use super::tables::{basis, density_table, product_table};
use super::{Flag, TypeSigma, MAX_LEVEL};
use crate::error::{out_of_range, Error, Result};
use crate::graph::{binomial, graph6_labeled, parse_graph6};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exact linear combination of flags sharing one type and one order.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb {
    sigma: TypeSigma,
    level: usize,
    terms: BTreeMap<Flag, Rational>,
}

fn check_level(sigma: &TypeSigma, level: usize) -> Result<()> {
    if level < sigma.arity() || level > MAX_LEVEL {
        return Err(out_of_range("flag level", level, "arity..=8"));
    }
    Ok(())
}

fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl LinComb {
    pub fn zero(sigma: TypeSigma, level: usize) -> Result<LinComb> {
        check_level(&sigma, level)?;
        Ok(LinComb {
            sigma,
            level,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_flag(f: Flag) -> LinComb {
        let mut terms = BTreeMap::new();
        terms.insert(f, Rational::one());
        LinComb {
            sigma: f.sigma(),
            level: f.order(),
            terms,
        }
    }

    /// The unit of the type: its identity flag.
    pub fn identity(sigma: TypeSigma) -> LinComb {
        LinComb::from_flag(sigma.identity_flag())
    }

    pub fn from_terms<I>(sigma: TypeSigma, level: usize, terms: I) -> Result<LinComb>
    where
        I: IntoIterator<Item = (Flag, Rational)>,
    {
        let mut out = LinComb::zero(sigma, level)?;
        for (f, c) in terms {
            if f.sigma() != sigma {
                return Err(Error::TypeMismatch(format!("{:?} in a {:?} combination", f, sigma)));
            }
            if f.order() != level {
                return Err(Error::SizeMismatch(format!(
                    "flag of order {} in a level-{level} combination",
                    f.order()
                )));
            }
            out.add_term(f, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, f: Flag, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(f).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn sigma(&self) -> TypeSigma {
        self.sigma
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Flag, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, f: &Flag) -> Rational {
        self.terms.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, k: &Rational) -> LinComb {
        let mut out = LinComb {
            sigma: self.sigma,
            level: self.level,
            terms: BTreeMap::new(),
        };
        for (f, c) in &self.terms {
            out.add_term(*f, c * k);
        }
        out
    }

    /// Sum, lifting the lower-level side first.
    pub fn plus(&self, other: &LinComb) -> Result<LinComb> {
        self.combine(other, Rational::one())
    }

    pub fn minus(&self, other: &LinComb) -> Result<LinComb> {
        self.combine(other, -Rational::one())
    }

    fn combine(&self, other: &LinComb, sign: Rational) -> Result<LinComb> {
        if self.sigma != other.sigma {
            return Err(Error::TypeMismatch(format!("{:?} vs {:?}", self.sigma, other.sigma)));
        }
        let level = self.level.max(other.level);
        let mut out = lift(self, level)?;
        for (f, c) in lift(other, level)?.terms {
            out.add_term(f, c * &sign);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> LinCombJson {
        let k = self.sigma.arity();
        LinCombJson {
            type_name: self.sigma.name(),
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(f, c)| TermJson {
                    graph6: graph6_labeled(f.graph()),
                    labels: (0..k).collect(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &LinCombJson) -> Result<LinComb> {
        let sigma = TypeSigma::from_name(&json.type_name)?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let f = Flag::new(parse_graph6(&t.graph6)?, &t.labels)?;
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|e| Error::Precondition(format!("bad integer {s:?}: {e}")))
            };
            let den = parse(&t.den)?;
            if den.is_zero() {
                return Err(Error::Precondition("zero denominator".into()));
            }
            terms.push((f, Rational::new(parse(&t.num)?, den)));
        }
        LinComb::from_terms(sigma, json.level, terms)
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} @{}] ", self.sigma.name(), self.level)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (flag, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", graph6_labeled(flag.graph()))?;
        }
        Ok(())
    }
}

/// Serialized form: `{type, level, terms: [{graph6, labels, num, den}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinCombJson {
    #[serde(rename = "type")]
    pub type_name: String,
    pub level: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub graph6: String,
    pub labels: Vec<usize>,
    pub num: String,
    pub den: String,
}

/// Re-expresses `f` at `level` through the chain rule.
pub fn lift(f: &LinComb, level: usize) -> Result<LinComb> {
    check_level(&f.sigma, level)?;
    if level < f.level {
        return Err(out_of_range("lift level", level, ">= current level"));
    }
    if level == f.level {
        return Ok(f.clone());
    }
    let k = f.sigma.arity();
    let big = basis(&f.sigma, level)?;
    let table = density_table(&f.sigma, f.level, level)?;
    let norm = ratio(1, binomial((level - k) as u64, (f.level - k) as u64));
    let mut out = LinComb::zero(f.sigma, level)?;
    for (small, c) in &f.terms {
        let scale = c * &norm;
        for &(j, cnt) in table.get(small).map(Vec::as_slice).unwrap_or(&[]) {
            out.add_term(big[j], &scale * BigInt::from(cnt));
        }
    }
    Ok(out)
}

/// Bilinear flag product; the result lives at `l1 + l2 - arity`.
pub fn product(f: &LinComb, g: &LinComb) -> Result<LinComb> {
    if f.sigma != g.sigma {
        return Err(Error::TypeMismatch(format!("{:?} vs {:?}", f.sigma, g.sigma)));
    }
    let sigma = f.sigma;
    let k = sigma.arity();
    let level = f.level + g.level - k;
    if level > MAX_LEVEL {
        return Err(out_of_range("product level", level, "<= 8"));
    }
    let big = basis(&sigma, level)?;
    let table = product_table(&sigma, f.level, g.level)?;
    let norm = ratio(1, binomial((level - k) as u64, (f.level - k) as u64));
    let mut out = LinComb::zero(sigma, level)?;
    for (a, ca) in &f.terms {
        for (b, cb) in &g.terms {
            let Some(hits) = table.get(&(*a, *b)) else { continue };
            let scale = ca * cb * &norm;
            for &(j, cnt) in hits {
                out.add_term(big[j], &scale * BigInt::from(cnt));
            }
        }
    }
    Ok(out)
}

/// Probability that re-drawing labels `keep..arity` of `f` as an ordered
/// tuple of distinct non-kept vertices reproduces `f`.
fn unlabel_weight(f: &Flag, keep: usize) -> Rational {
    let n = f.order();
    let k = f.arity();
    let pool: Vec<usize> = (keep..n).collect();
    let mut hits = 0u128;
    let mut total = 0u128;
    let mut tuple = Vec::with_capacity(k - keep);
    fn walk(
        f: &Flag,
        keep: usize,
        pool: &[usize],
        tuple: &mut Vec<usize>,
        hits: &mut u128,
        total: &mut u128,
    ) {
        let k = f.arity();
        if tuple.len() == k - keep {
            *total += 1;
            let n = f.order();
            let order: Vec<usize> = (0..keep)
                .chain(tuple.iter().copied())
                .chain(pool.iter().copied().filter(|v| !tuple.contains(v)))
                .collect();
            debug_assert_eq!(order.len(), n);
            if Flag::canonicalize(f.graph().permuted(&order), k) == *f {
                *hits += 1;
            }
            return;
        }
        for &v in pool {
            if !tuple.contains(&v) {
                tuple.push(v);
                walk(f, keep, pool, tuple, hits, total);
                tuple.pop();
            }
        }
    }
    walk(f, keep, &pool, &mut tuple, &mut hits, &mut total);
    ratio(hits, total)
}

/// The averaging operator from type `from` down to type `to`, where `to`
/// keeps a prefix of the labels of `from`.
pub fn average(f: &LinComb, from: &TypeSigma, to: &TypeSigma) -> Result<LinComb> {
    if f.sigma != *from {
        return Err(Error::TypeMismatch(format!(
            "averaging from {:?} applied to a {:?} combination",
            from, f.sigma
        )));
    }
    if from == to {
        return Ok(f.clone());
    }
    if to.arity() >= from.arity() || !from.has_prefix(to) {
        return Err(Error::UnsupportedAveraging {
            from: from.name(),
            to: to.name(),
        });
    }
    let keep = to.arity();
    let mut out = LinComb::zero(*to, f.level)?;
    for (flag, c) in &f.terms {
        out.add_term(flag.forget_labels_to(keep), c * unlabel_weight(flag, keep));
    }
    Ok(out)
}

/// Lifts both sides to the larger level; returns whether they agree and
/// `lhs - rhs`.
pub fn is_identity(lhs: &LinComb, rhs: &LinComb) -> Result<(bool, LinComb)> {
    let diff = lhs.minus(rhs)?;
    Ok((diff.is_zero(), diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn unl(g: Graph) -> LinComb {
        LinComb::from_flag(Flag::unlabeled(&g))
    }

    #[test]
    fn rho_squared() {
        let rho = unl(Graph::complete(2).unwrap());
        let sq = product(&rho, &rho).unwrap();
        assert_eq!(sq.level(), 4);
        assert_eq!(sq.coefficient(&Flag::unlabeled(&Graph::cycle(4).unwrap())), q(2, 3));
        assert_eq!(sq.coefficient(&Flag::unlabeled(&Graph::complete(4).unwrap())), q(1, 1));
    }

    #[test]
    fn e_squared() {
        let e = LinComb::from_flag(Flag::new(Graph::complete(2).unwrap(), &[0]).unwrap());
        let sq = product(&e, &e).unwrap();
        let k31 = Flag::new(Graph::complete(3).unwrap(), &[0]).unwrap();
        let centre = Flag::new(Graph::path(3).unwrap(), &[1]).unwrap();
        let expected = LinComb::from_terms(TypeSigma::vertex(), 3, [(k31, q(1, 1)), (centre, q(1, 1))]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn identity_is_unit() {
        let f = LinComb::from_flag(Flag::new(Graph::path(3).unwrap(), &[0, 1]).unwrap());
        let one = LinComb::identity(TypeSigma::edge());
        assert_eq!(product(&one, &f).unwrap(), f);
        assert_eq!(product(&f, &one).unwrap(), f);
    }

    #[test]
    fn lift_edge_to_three() {
        let lifted = lift(&unl(Graph::complete(2).unwrap()), 3).unwrap();
        let expected = LinComb::from_terms(
            TypeSigma::empty(),
            3,
            [
                (Flag::unlabeled(&Graph::complete(3).unwrap()), q(1, 1)),
                (Flag::unlabeled(&Graph::path(3).unwrap()), q(2, 3)),
                (Flag::unlabeled(&Graph::path(3).unwrap().complement()), q(1, 3)),
            ],
        )
        .unwrap();
        assert_eq!(lifted, expected);
        assert!(lift(&lifted, 2).is_err());
    }

    #[test]
    fn lift_is_transitive() {
        let f = unl(Graph::path(3).unwrap())
            .plus(&unl(Graph::complete(3).unwrap()).scaled(&q(-5, 7)))
            .unwrap();
        assert_eq!(lift(&lift(&f, 4).unwrap(), 6).unwrap(), lift(&f, 6).unwrap());
        assert_eq!(lift(&f, 3).unwrap(), f);
    }

    #[test]
    fn averaging_rejects_bad_pairs() {
        let e = LinComb::from_flag(Flag::new(Graph::complete(2).unwrap(), &[0]).unwrap());
        assert!(matches!(
            average(&e, &TypeSigma::vertex(), &TypeSigma::edge()),
            Err(Error::UnsupportedAveraging { .. })
        ));
        assert!(matches!(
            average(&e, &TypeSigma::edge(), &TypeSigma::empty()),
            Err(Error::TypeMismatch(_))
        ));
    }

    #[test]
    fn non_identity_reports_difference() {
        let (ok, diff) = is_identity(&unl(Graph::complete(2).unwrap()), &unl(Graph::complete(3).unwrap())).unwrap();
        assert!(!ok);
        assert_eq!(diff.level(), 3);
        assert!(!diff.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = LinComb::from_terms(
            TypeSigma::edge(),
            3,
            [
                (Flag::new(Graph::path(3).unwrap(), &[0, 1]).unwrap(), q(1, 2)),
                (Flag::new(Graph::complete(3).unwrap(), &[2, 0]).unwrap(), q(-7, 3)),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        assert!(text.contains("\"type\":\"E\""));
        let back: LinCombJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LinComb::from_json(&back).unwrap(), f);
    }
}
