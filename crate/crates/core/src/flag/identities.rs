//! Named flags and the identity suite of the triangle-density argument.

use super::{average, enumerate_flags, flag_density, is_identity, lift, product, Flag, LinComb, TypeSigma};
use crate::error::Result;
use crate::extremal::g1_g2;
use crate::graph::{subsets_of_size, Graph};
use crate::Rational;
use num_traits::{One, Zero};
use rayon::prelude::*;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn lc(f: Flag) -> LinComb {
    LinComb::from_flag(f)
}

/// `ρ = K2` as an unlabeled graph.
pub fn rho() -> Flag {
    clique(2)
}

pub fn clique(r: usize) -> Flag {
    Flag::unlabeled(&Graph::complete(r).expect("r <= 16"))
}

pub fn p3() -> Flag {
    Flag::unlabeled(&Graph::path(3).expect("3 vertices"))
}

/// Complement of the 3-vertex path: one edge plus an isolated vertex.
pub fn p3_bar() -> Flag {
    Flag::unlabeled(&Graph::from_edges(3, &[(0, 1)]).expect("3 vertices"))
}

/// Complement of `K_{1,3}`: a triangle plus an isolated vertex.
pub fn k13_bar() -> Flag {
    Flag::unlabeled(&Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2)]).expect("4 vertices"))
}

/// The rooted edge `e = K2^1`.
pub fn e() -> Flag {
    Flag::new(Graph::complete(2).expect("2 vertices"), &[0]).expect("valid labels")
}

/// `K_r` with one labeled vertex.
pub fn clique_1(r: usize) -> Flag {
    Flag::new(Graph::complete(r).expect("r <= 16"), &[0]).expect("valid labels")
}

/// `K3` with a labeled edge.
pub fn k3_e() -> Flag {
    Flag::new(Graph::complete(3).expect("3 vertices"), &[0, 1]).expect("valid labels")
}

/// The unique E-flag on `P̄3`: the labeled edge plus an isolated vertex.
pub fn p3_bar_e() -> Flag {
    Flag::new(Graph::from_edges(3, &[(0, 1)]).expect("3 vertices"), &[0, 1]).expect("valid labels")
}

/// The unit E-flag.
pub fn edge_unit() -> Flag {
    TypeSigma::edge().identity_flag()
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// `lhs - rhs` at the common level; zero when the identity holds.
    pub difference: LinComb,
}

fn check(name: impl Into<String>, lhs: &LinComb, rhs: &LinComb) -> Result<IdentityCheck> {
    let (holds, difference) = is_identity(lhs, rhs)?;
    Ok(IdentityCheck {
        name: name.into(),
        holds,
        difference,
    })
}

fn avg(f: &LinComb, from: TypeSigma, to: TypeSigma) -> Result<LinComb> {
    average(f, &from, &to)
}

fn sum(parts: &[(Rational, LinComb)]) -> Result<LinComb> {
    let (first, rest) = parts.split_first().expect("non-empty");
    let mut acc = first.1.scaled(&first.0);
    for (k, f) in rest {
        acc = acc.plus(&f.scaled(k))?;
    }
    Ok(acc)
}

/// `3⟦e K3¹⟧₁ + 3⟦P̄3^E K3^E⟧_E = 2K3 + K4 + ¼K̄_{1,3}`.
pub fn lm32() -> Result<IdentityCheck> {
    let (one, zero, edge) = (TypeSigma::vertex(), TypeSigma::empty(), TypeSigma::edge());
    let lhs = sum(&[
        (q(3, 1), avg(&product(&lc(e()), &lc(clique_1(3)))?, one, zero)?),
        (q(3, 1), avg(&product(&lc(p3_bar_e()), &lc(k3_e()))?, edge, zero)?),
    ])?;
    let rhs = sum(&[
        (q(2, 1), lc(clique(3))),
        (q(1, 1), lc(clique(4))),
        (q(1, 4), lc(k13_bar())),
    ])?;
    check("3[eK3^1]_1 + 3[P3bar^E K3^E]_E = 2K3 + K4 + K13bar/4", &lhs, &rhs)
}

/// `⅓P̄3 + 2⟦e²⟧₁ = K2 + K3`.
pub fn id2() -> Result<IdentityCheck> {
    let e2 = product(&lc(e()), &lc(e()))?;
    let lhs = sum(&[
        (q(1, 3), lc(p3_bar())),
        (q(2, 1), avg(&e2, TypeSigma::vertex(), TypeSigma::empty())?),
    ])?;
    let rhs = lc(rho()).plus(&lc(clique(3)))?;
    check("P3bar/3 + 2[e^2]_1 = K2 + K3", &lhs, &rhs)
}

/// The identity flag of `sigma` lifted to `level` is the sum of all flags.
pub fn sum_to_one(sigma: TypeSigma, level: usize) -> Result<IdentityCheck> {
    let lifted = lift(&LinComb::identity(sigma), level)?;
    let all = LinComb::from_terms(
        sigma,
        level,
        enumerate_flags(&sigma, level)?.into_iter().map(|f| (f, Rational::one())),
    )?;
    check(format!("sum-to-one[{}, level {level}]", sigma.name()), &lifted, &all)
}

/// The four averaging anchors.
pub fn averaging_anchors() -> Result<Vec<IdentityCheck>> {
    let (zero, one, edge) = (TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge());
    Ok(vec![
        check("[e]_1 = K2", &avg(&lc(e()), one, zero)?, &lc(rho()))?,
        check(
            "[P3bar^E]_E = P3bar/3",
            &avg(&lc(p3_bar_e()), edge, zero)?,
            &lc(p3_bar()).scaled(&q(1, 3)),
        )?,
        check("[K3^E]_{E,1} = K3^1", &avg(&lc(k3_e()), edge, one)?, &lc(clique_1(3)))?,
        check("[E]_{E,1} = e", &avg(&lc(edge_unit()), edge, one)?, &lc(e()))?,
    ])
}

/// `⟦⟦F⟧_{E,1}⟧₁ = ⟦F⟧_E` for every 4-vertex E-flag.
pub fn averaging_transitivity() -> Result<IdentityCheck> {
    let (zero, one, edge) = (TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge());
    let all = enumerate_flags(&edge, 4)?;
    let mut worst = LinComb::zero(zero, 4)?;
    for f in all {
        let two_step = avg(&avg(&lc(f), edge, one)?, one, zero)?;
        let (ok, diff) = is_identity(&two_step, &avg(&lc(f), edge, zero)?)?;
        if !ok {
            worst = diff;
            break;
        }
    }
    Ok(IdentityCheck {
        name: "[[F]_{E,1}]_1 = [F]_E on all 4-vertex E-flags".into(),
        holds: worst.is_zero(),
        difference: worst,
    })
}

/// Every check of the suite: the two counting identities, sum-to-one for each built-in type
/// up to level 5, the averaging anchors and averaging transitivity.
pub fn suite() -> Result<Vec<IdentityCheck>> {
    let mut out = vec![lm32()?, id2()?];
    for sigma in [TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge(), TypeSigma::sigma()] {
        for level in sigma.arity()..=5 {
            out.push(sum_to_one(sigma, level)?);
        }
    }
    out.extend(averaging_anchors()?);
    out.push(averaging_transitivity()?);
    Ok(out)
}

/// True when some unlabeled vertex of the E-flag `f` is non-adjacent to both
/// labels, i.e. the labeled pair extends to an induced `P̄3`.
pub fn contains_p3_bar_e(f: &Flag) -> bool {
    flag_density(&p3_bar_e(), f).is_ok_and(|d| !d.is_zero())
}

/// A solution `(P4^{E,c}, P4^{E,b}, F^E)` of the id5 relation.
#[derive(Clone, Debug)]
pub struct FeTriple {
    pub p_c: Flag,
    pub p_b: Flag,
    pub f: Flag,
    /// `½p_c − ½p_b − F`.
    pub fe: LinComb,
}

/// `f^E = ½p_c − ½p_b − F`.
pub fn fe_of(p_c: &Flag, p_b: &Flag, f: &Flag) -> Result<LinComb> {
    sum(&[(q(1, 2), lc(*p_c)), (q(-1, 2), lc(*p_b)), (q(-1, 1), lc(*f))])
}

/// `2⟦e K3¹⟧₁ − ⟦f^E⟧_E = 4/3 K3 + 2/3 K4 − 1/3 K̄_{1,3}`.
pub fn id5(fe: &LinComb) -> Result<IdentityCheck> {
    let (zero, one, edge) = (TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge());
    let lhs = avg(&product(&lc(e()), &lc(clique_1(3)))?, one, zero)?
        .scaled(&q(2, 1))
        .minus(&avg(fe, edge, zero)?)?;
    let rhs = sum(&[
        (q(4, 3), lc(clique(3))),
        (q(2, 3), lc(clique(4))),
        (q(-1, 3), lc(k13_bar())),
    ])?;
    check("id5: 2[eK3^1]_1 - [f^E]_E = 4K3/3 + 2K4/3 - K13bar/3", &lhs, &rhs)
}

/// Searches every triple of 4-vertex E-flags for solutions of id5 in which
/// `p_b` and `F` contain `P̄3^E`.
pub fn resolve_fe() -> Result<Vec<FeTriple>> {
    let (zero, one, edge) = (TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge());
    let flags = enumerate_flags(&edge, 4)?;
    let target = avg(&product(&lc(e()), &lc(clique_1(3)))?, one, zero)?
        .scaled(&q(2, 1))
        .minus(&sum(&[
            (q(4, 3), lc(clique(3))),
            (q(2, 3), lc(clique(4))),
            (q(-1, 3), lc(k13_bar())),
        ])?)?;
    let averaged: Vec<LinComb> = flags
        .iter()
        .map(|f| avg(&lc(*f), edge, zero))
        .collect::<Result<_>>()?;
    let n = flags.len();
    let mut found: Vec<(usize, usize, usize)> = (0..n * n * n)
        .into_par_iter()
        .filter_map(|idx| {
            let (i, j, k) = (idx / (n * n), idx / n % n, idx % n);
            if !contains_p3_bar_e(&flags[j]) || !contains_p3_bar_e(&flags[k]) {
                return None;
            }
            let value = sum(&[
                (q(1, 2), averaged[i].clone()),
                (q(-1, 2), averaged[j].clone()),
                (q(-1, 1), averaged[k].clone()),
            ])
            .ok()?;
            (value == target).then_some((i, j, k))
        })
        .collect();
    found.sort_unstable();
    found
        .into_iter()
        .map(|(i, j, k)| {
            Ok(FeTriple {
                p_c: flags[i],
                p_b: flags[j],
                f: flags[k],
                fe: fe_of(&flags[i], &flags[j], &flags[k])?,
            })
        })
        .collect()
}

/// One row of the id6 report.
#[derive(Clone, Debug)]
pub struct Id6Row {
    pub graph: Graph,
    pub coefficient: Rational,
    /// The graph contains an induced triangle plus isolated vertex, so its
    /// density vanishes on the extremal limits.
    pub contains_k13_bar: bool,
}

/// Coefficient-wise expansion of
/// `⟦f^E K3^E⟧_E − ⟦(K3¹)²⟧₁ − (G1+G2)/60 + ½K4 + ⅓ρK3 + ⅙K5` at level 5.
#[derive(Clone, Debug)]
pub struct Id6Report {
    pub rows: Vec<Id6Row>,
}

impl Id6Report {
    pub fn negatives(&self) -> impl Iterator<Item = &Id6Row> {
        self.rows.iter().filter(|r| r.coefficient < Rational::zero())
    }

    /// Negative coefficients on graphs that are not already forced to have
    /// zero density by `φ(K̄_{1,3}) = 0`.
    pub fn essential_negatives(&self) -> impl Iterator<Item = &Id6Row> {
        self.negatives().filter(|r| !r.contains_k13_bar)
    }

    pub fn min_coefficient(&self) -> Rational {
        self.rows.iter().map(|r| r.coefficient.clone()).min().unwrap_or_else(Rational::zero)
    }

    /// Coefficient-wise domination at level 5.
    pub fn dominates(&self) -> bool {
        self.negatives().next().is_none()
    }
}

/// The id6 expression at level 5, one coefficient per 5-vertex graph.
pub fn id6_expression(fe: &LinComb) -> Result<LinComb> {
    let (zero, one, edge) = (TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge());
    let (g1, g2) = g1_g2();
    sum(&[
        (q(1, 1), avg(&product(fe, &lc(k3_e()))?, edge, zero)?),
        (q(-1, 1), avg(&product(&lc(clique_1(3)), &lc(clique_1(3)))?, one, zero)?),
        (q(-1, 60), lc(Flag::unlabeled(&g1))),
        (q(-1, 60), lc(Flag::unlabeled(&g2))),
        (q(1, 2), lift(&lc(clique(4)), 5)?),
        (q(1, 3), product(&lc(rho()), &lc(clique(3)))?),
        (q(1, 6), lc(clique(5))),
    ])
}

pub fn check_id6(fe: &LinComb) -> Result<Id6Report> {
    let expr = id6_expression(fe)?;
    let k13 = *k13_bar().graph();
    let rows = enumerate_flags(&TypeSigma::empty(), 5)?
        .into_iter()
        .map(|f| Id6Row {
            graph: *f.graph(),
            coefficient: expr.coefficient(&f),
            contains_k13_bar: subsets_of_size(f.graph().vertex_mask(), 4)
                .any(|s| f.graph().induced_mask(s).canonical() == k13),
        })
        .collect();
    Ok(Id6Report { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_identities_hold() {
        assert!(lm32().unwrap().holds);
        assert!(id2().unwrap().holds);
    }

    #[test]
    fn anchors_hold() {
        for c in averaging_anchors().unwrap() {
            assert!(c.holds, "{}: {}", c.name, c.difference);
        }
    }

    #[test]
    fn p3_bar_containment() {
        assert!(contains_p3_bar_e(&p3_bar_e()));
        assert!(!contains_p3_bar_e(&k3_e()));
        let p4 = Graph::path(4).unwrap();
        assert!(!contains_p3_bar_e(&Flag::new(p4, &[1, 2]).unwrap()));
        assert!(contains_p3_bar_e(&Flag::new(p4, &[0, 1]).unwrap()));
    }

    #[test]
    fn k5_coefficient_in_id6() {
        let zero = LinComb::zero(TypeSigma::edge(), 4).unwrap();
        let expr = id6_expression(&zero).unwrap();
        // only K5 gets contributions from the K5, K4, ρK3 and (K3¹)² terms
        let k5 = expr.coefficient(&clique(5));
        assert_eq!(k5, q(1, 6) + q(1, 2) + q(1, 3) - q(1, 1));
    }
}
