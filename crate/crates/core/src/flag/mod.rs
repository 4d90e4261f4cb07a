//! Flags: graphs with an ordered tuple of labeled vertices inducing a type.
//!
//! A [`Flag`] is stored in flag-canonical form: labeled vertices occupy
//! positions `0..arity` in label order and the unlabeled vertices are
//! canonically ordered behind them, so derived equality is flag isomorphism.

pub mod identities;
mod lincomb;
mod tables;

pub use lincomb::{average, is_identity, lift, product, LinComb, LinCombJson, TermJson};

use crate::error::{Error, Result};
use crate::graph::{binomial, canonical_with_cells, subsets_of_size, Graph};
use crate::Rational;
use num_bigint::BigInt;
use std::fmt;

/// Largest flag order handled by products, lifts and enumeration.
pub const MAX_LEVEL: usize = 8;

/// A type: a fully labeled graph (vertex `i` carries label `i + 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSigma {
    graph: Graph,
}

impl TypeSigma {
    pub fn new(graph: Graph) -> Result<TypeSigma> {
        if graph.order() > 3 {
            return Err(Error::Precondition(format!(
                "types of arity {} are not supported (max 3)",
                graph.order()
            )));
        }
        Ok(TypeSigma { graph })
    }

    /// Type 0: the empty type.
    pub fn empty() -> TypeSigma {
        TypeSigma {
            graph: Graph::new(0).expect("order 0"),
        }
    }

    /// Type 1: a single labeled vertex.
    pub fn vertex() -> TypeSigma {
        TypeSigma {
            graph: Graph::new(1).expect("order 1"),
        }
    }

    /// Type E: two adjacent labeled vertices.
    pub fn edge() -> TypeSigma {
        TypeSigma {
            graph: Graph::complete(2).expect("order 2"),
        }
    }

    /// The 3-vertex type on the complement of the path, labels 1 and 2 adjacent.
    pub fn sigma() -> TypeSigma {
        TypeSigma {
            graph: Graph::from_edges(3, &[(0, 1)]).expect("order 3"),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn arity(&self) -> usize {
        self.graph.order()
    }

    pub fn name(&self) -> String {
        if *self == TypeSigma::empty() {
            "0".into()
        } else if *self == TypeSigma::vertex() {
            "1".into()
        } else if *self == TypeSigma::edge() {
            "E".into()
        } else if *self == TypeSigma::sigma() {
            "sigma".into()
        } else {
            format!("g6:{}", crate::graph::graph6_labeled(&self.graph))
        }
    }

    pub fn from_name(name: &str) -> Result<TypeSigma> {
        match name {
            "0" => Ok(TypeSigma::empty()),
            "1" => Ok(TypeSigma::vertex()),
            "E" => Ok(TypeSigma::edge()),
            "sigma" => Ok(TypeSigma::sigma()),
            other => match other.strip_prefix("g6:") {
                Some(g6) => TypeSigma::new(crate::graph::parse_graph6(g6)?),
                None => Err(Error::Precondition(format!("unknown type name {other:?}"))),
            },
        }
    }

    /// The type's identity flag (the type graph with every vertex labeled).
    pub fn identity_flag(&self) -> Flag {
        Flag {
            graph: self.graph,
            arity: self.arity() as u8,
        }
    }

    /// True when `to` is obtained from `self` by forgetting a suffix of labels.
    pub fn has_prefix(&self, to: &TypeSigma) -> bool {
        let k = to.arity();
        k <= self.arity() && self.graph.induced(&(0..k).collect::<Vec<_>>()) == to.graph
    }
}

impl fmt::Debug for TypeSigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type({})", self.name())
    }
}

/// A flag of some type, in flag-canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    graph: Graph,
    arity: u8,
}

impl Flag {
    /// Flag on `graph` whose `i`-th label sits on vertex `labels[i]`.
    pub fn new(graph: Graph, labels: &[usize]) -> Result<Flag> {
        let n = graph.order();
        let mut seen = 0u16;
        for &v in labels {
            graph.check_vertex(v)?;
            if seen >> v & 1 == 1 {
                return Err(Error::InvalidFlag(format!("vertex {v} labeled twice")));
            }
            seen |= 1 << v;
        }
        if labels.len() > 3 {
            return Err(Error::InvalidFlag(format!("{} labels, max 3", labels.len())));
        }
        let order: Vec<usize> = labels
            .iter()
            .copied()
            .chain((0..n).filter(|v| seen >> v & 1 == 0))
            .collect();
        Ok(Flag::canonicalize(graph.permuted(&order), labels.len()))
    }

    /// Flag whose graph already has its labels on `0..arity`.
    pub(crate) fn canonicalize(graph: Graph, arity: usize) -> Flag {
        let n = graph.order();
        let mut cells: Vec<Vec<u8>> = (0..arity as u8).map(|v| vec![v]).collect();
        if n > arity {
            cells.push((arity as u8..n as u8).collect());
        }
        Flag {
            graph: canonical_with_cells(&graph, cells).0,
            arity: arity as u8,
        }
    }

    /// Unlabeled graph viewed as a type-0 flag.
    pub fn unlabeled(graph: &Graph) -> Flag {
        Flag {
            graph: graph.canonical(),
            arity: 0,
        }
    }

    /// Graph with the labeled vertices on `0..arity`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn sigma(&self) -> TypeSigma {
        let k = self.arity();
        TypeSigma {
            graph: self.graph.induced(&(0..k).collect::<Vec<_>>()),
        }
    }

    /// Bitmask of the unlabeled vertices.
    pub(crate) fn free_mask(&self) -> u16 {
        self.graph.vertex_mask() & !((1u16 << self.arity) - 1)
    }

    /// Subflag induced by the labels plus the unlabeled vertices in `extra`.
    pub(crate) fn restrict(&self, extra: u16) -> Flag {
        let k = self.arity();
        let vs: Vec<usize> = (0..k).chain(crate::graph::bits(extra)).collect();
        Flag::canonicalize(self.graph.induced(&vs), k)
    }

    /// Re-reads the flag with only the first `k` labels kept.
    pub(crate) fn forget_labels_to(&self, k: usize) -> Flag {
        Flag::canonicalize(self.graph, k)
    }

    /// Underlying unlabeled graph (canonical).
    pub fn underlying(&self) -> Graph {
        self.graph.canonical()
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.arity()).map(|v| v.to_string()).collect();
        write!(f, "Flag({:?}; labels [{}])", self.graph, labels.join(","))
    }
}

/// All flags of type `sigma` on `level` vertices, one per isomorphism class.
pub fn enumerate_flags(sigma: &TypeSigma, level: usize) -> Result<Vec<Flag>> {
    Ok(tables::basis(sigma, level)?.as_ref().clone())
}

/// `p(f, g)`: probability that the labels of `g` together with a uniformly
/// random set of `|V(f)| - arity` unlabeled vertices induce a copy of `f`.
pub fn flag_density(f: &Flag, g: &Flag) -> Result<Rational> {
    if f.sigma() != g.sigma() {
        return Err(Error::TypeMismatch(format!("{:?} vs {:?}", f.sigma(), g.sigma())));
    }
    if f.order() > g.order() {
        return Err(Error::SizeMismatch(format!(
            "flag of order {} inside flag of order {}",
            f.order(),
            g.order()
        )));
    }
    let k = f.arity();
    let hits = subsets_of_size(g.free_mask(), f.order() - k)
        .filter(|&s| g.restrict(s) == *f)
        .count();
    Ok(Rational::new(
        BigInt::from(hits),
        BigInt::from(binomial((g.order() - k) as u64, (f.order() - k) as u64)),
    ))
}

/// `p(f1, f2; big)`: probability that a uniformly random split of the
/// unlabeled vertices of `big` into parts of sizes `|f1| - k` and `|f2| - k`
/// induces `f1` and `f2` respectively.
pub fn pair_density(f1: &Flag, f2: &Flag, big: &Flag) -> Result<Rational> {
    let sigma = big.sigma();
    if f1.sigma() != sigma || f2.sigma() != sigma {
        return Err(Error::TypeMismatch("pair density needs a common type".into()));
    }
    let k = sigma.arity();
    if big.order() + k != f1.order() + f2.order() {
        return Err(Error::SizeMismatch(format!(
            "{} + {} - {} != {}",
            f1.order(),
            f2.order(),
            k,
            big.order()
        )));
    }
    let free = big.free_mask();
    let hits = subsets_of_size(free, f1.order() - k)
        .filter(|&s| big.restrict(s) == *f1 && big.restrict(free & !s) == *f2)
        .count();
    Ok(Rational::new(
        BigInt::from(hits),
        BigInt::from(binomial((big.order() - k) as u64, (f1.order() - k) as u64)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(&TypeSigma::vertex(), 2).unwrap().len(), 2);
        assert_eq!(enumerate_flags(&TypeSigma::edge(), 3).unwrap().len(), 4);
        assert_eq!(
            enumerate_flags(&TypeSigma::empty(), 4).unwrap().len(),
            crate::graph::enumerate_graphs(4).unwrap().len()
        );
        assert!(enumerate_flags(&TypeSigma::edge(), 1).is_err());
        assert!(enumerate_flags(&TypeSigma::edge(), 9).is_err());
    }

    #[test]
    fn label_order_matters() {
        // labels on an edge of P3: the third vertex hangs off label 1 or label 2
        let p3 = Graph::path(3).unwrap();
        let a = Flag::new(p3, &[0, 1]).unwrap();
        let b = Flag::new(p3, &[1, 0]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.sigma(), TypeSigma::edge());
        assert_eq!(a.underlying(), b.underlying());
    }

    #[test]
    fn flag_isomorphism_fixes_labels() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(Flag::new(p3, &[0]).unwrap(), Flag::new(p3, &[2]).unwrap());
        assert_ne!(Flag::new(p3, &[0]).unwrap(), Flag::new(p3, &[1]).unwrap());
    }

    #[test]
    fn star_densities() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let e = Flag::new(Graph::complete(2).unwrap(), &[0]).unwrap();
        let centre = Flag::new(star, &[0]).unwrap();
        let leaf = Flag::new(star, &[1]).unwrap();
        assert!(flag_density(&e, &centre).unwrap().is_one());
        assert_eq!(flag_density(&e, &leaf).unwrap(), q(1, 3));
        let k3e = Flag::new(Graph::complete(3).unwrap(), &[0, 1]).unwrap();
        let k4e = Flag::new(Graph::complete(4).unwrap(), &[0, 1]).unwrap();
        assert!(flag_density(&k3e, &k4e).unwrap().is_one());
        assert!(matches!(flag_density(&e, &k4e), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn pair_density_examples() {
        let k2 = Flag::unlabeled(&Graph::complete(2).unwrap());
        let c4 = Flag::unlabeled(&Graph::cycle(4).unwrap());
        assert_eq!(pair_density(&k2, &k2, &c4).unwrap(), q(2, 3));
        let k4 = Flag::unlabeled(&Graph::complete(4).unwrap());
        assert!(pair_density(&k2, &k2, &k4).unwrap().is_one());
        let e = Flag::new(Graph::complete(2).unwrap(), &[0]).unwrap();
        let k31 = Flag::new(Graph::complete(3).unwrap(), &[0]).unwrap();
        assert!(pair_density(&e, &e, &k31).unwrap().is_one());
        assert!(matches!(pair_density(&k2, &k2, &k2), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn prefix_types() {
        assert!(TypeSigma::edge().has_prefix(&TypeSigma::vertex()));
        assert!(TypeSigma::sigma().has_prefix(&TypeSigma::edge()));
        assert!(TypeSigma::sigma().has_prefix(&TypeSigma::empty()));
        assert!(!TypeSigma::vertex().has_prefix(&TypeSigma::edge()));
    }

    #[test]
    fn type_names_round_trip() {
        for t in [TypeSigma::empty(), TypeSigma::vertex(), TypeSigma::edge(), TypeSigma::sigma()] {
            assert_eq!(TypeSigma::from_name(&t.name()).unwrap(), t);
        }
        let path_type = TypeSigma::new(Graph::path(3).unwrap()).unwrap();
        assert_eq!(TypeSigma::from_name(&path_type.name()).unwrap(), path_type);
    }
}
