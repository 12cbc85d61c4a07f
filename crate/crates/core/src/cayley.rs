//! Groups, elements, connection sets and explicit Cayley graph adjacency.
//!
//! A [`GroupSpec`] is a direct product of cyclic groups `Z_n` and odd dihedral
//! groups `D_n` (order `2n`). Elements are tuples of per-factor coordinates.
//! Vertices are enumerated factor-major: the first factor is the most
//! significant digit, and inside a dihedral factor all rotations `a^k` come
//! before the reflections `a^k b`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numtheory;

/// Default vertex cap for explicit dense adjacency matrices.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// A single direct factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum Factor {
    Cyclic(u64),
    /// Dihedral group of order `2n`, `n` odd and at least 3.
    Dihedral(u64),
}

impl Factor {
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 || n > numtheory::MAX_ARGUMENT {
            return Err(Error::InvalidInput(format!("cyclic order {n} out of range")));
        }
        Ok(Factor::Cyclic(n))
    }

    pub fn dihedral(n: u64) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) || n > numtheory::MAX_ARGUMENT {
            return Err(Error::InvalidInput(format!(
                "dihedral:{n} unsupported: only odd n >= 3 is implemented"
            )));
        }
        Ok(Factor::Dihedral(n))
    }

    /// The `n` parameter (rotation order).
    pub fn n(&self) -> u64 {
        match *self {
            Factor::Cyclic(n) | Factor::Dihedral(n) => n,
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            Factor::Cyclic(n) => n,
            Factor::Dihedral(n) => 2 * n,
        }
    }

    pub fn identity(&self) -> FactorElement {
        match self {
            Factor::Cyclic(_) => FactorElement::Cyclic(0),
            Factor::Dihedral(_) => FactorElement::Dihedral {
                reflection: false,
                rotation: 0,
            },
        }
    }

    pub fn contains(&self, x: &FactorElement) -> bool {
        match (*self, *x) {
            (Factor::Cyclic(n), FactorElement::Cyclic(k)) => k < n,
            (Factor::Dihedral(n), FactorElement::Dihedral { rotation, .. }) => rotation < n,
            _ => false,
        }
    }

    /// Elements in vertex order.
    pub fn elements(&self) -> Vec<FactorElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn element_at(&self, index: u64) -> FactorElement {
        match *self {
            Factor::Cyclic(_) => FactorElement::Cyclic(index),
            Factor::Dihedral(n) => FactorElement::Dihedral {
                reflection: index >= n,
                rotation: index % n,
            },
        }
    }

    pub fn index_of(&self, x: &FactorElement) -> u64 {
        match (*self, *x) {
            (Factor::Cyclic(_), FactorElement::Cyclic(k)) => k,
            (Factor::Dihedral(n), FactorElement::Dihedral { reflection, rotation }) => {
                if reflection {
                    n + rotation
                } else {
                    rotation
                }
            }
            _ => panic!("element kind does not match factor"),
        }
    }

    /// Product inside this factor. Both arguments must belong to the factor.
    pub fn multiply(&self, g: &FactorElement, h: &FactorElement) -> FactorElement {
        match (*self, *g, *h) {
            (Factor::Cyclic(n), FactorElement::Cyclic(x), FactorElement::Cyclic(y)) => {
                FactorElement::Cyclic((x + y) % n)
            }
            (
                Factor::Dihedral(n),
                FactorElement::Dihedral {
                    reflection: eg,
                    rotation: kg,
                },
                FactorElement::Dihedral {
                    reflection: eh,
                    rotation: kh,
                },
            ) => {
                // a^kg b^eg · a^kh b^eh = a^(kg ± kh) b^(eg xor eh), using b a b = a^-1.
                let k = if eg { (kg + n - kh) % n } else { (kg + kh) % n };
                FactorElement::Dihedral {
                    reflection: eg ^ eh,
                    rotation: k,
                }
            }
            _ => panic!("element kind does not match factor"),
        }
    }

    pub fn inverse(&self, g: &FactorElement) -> FactorElement {
        match (*self, *g) {
            (Factor::Cyclic(n), FactorElement::Cyclic(k)) => FactorElement::Cyclic((n - k) % n),
            (Factor::Dihedral(n), FactorElement::Dihedral { reflection, rotation }) => {
                if reflection {
                    *g
                } else {
                    FactorElement::Dihedral {
                        reflection: false,
                        rotation: (n - rotation) % n,
                    }
                }
            }
            _ => panic!("element kind does not match factor"),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Cyclic(n) => write!(f, "cyclic:{n}"),
            Factor::Dihedral(n) => write!(f, "dihedral:{n}"),
        }
    }
}

/// Coordinate of a group element inside one factor.
///
/// Dihedral coordinates represent `a^rotation b^reflection`. Field order makes
/// the derived ordering put rotations before reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FactorElement {
    Cyclic(u64),
    Dihedral { reflection: bool, rotation: u64 },
}

impl FactorElement {
    pub fn rotation(k: u64) -> Self {
        FactorElement::Dihedral {
            reflection: false,
            rotation: k,
        }
    }

    pub fn reflection(k: u64) -> Self {
        FactorElement::Dihedral {
            reflection: true,
            rotation: k,
        }
    }
}

impl fmt::Display for FactorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorElement::Cyclic(k) => write!(f, "{k}"),
            FactorElement::Dihedral {
                reflection: false,
                rotation,
            } => write!(f, "r{rotation}"),
            FactorElement::Dihedral {
                reflection: true,
                rotation,
            } => write!(f, "s{rotation}"),
        }
    }
}

/// Element of a product group, one coordinate per factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElement(pub Vec<FactorElement>);

impl GroupElement {
    pub fn coords(&self) -> &[FactorElement] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Direct product of cyclic and odd dihedral factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("a group needs at least one factor".into()));
        }
        for f in &factors {
            match *f {
                Factor::Cyclic(n) => {
                    Factor::cyclic(n)?;
                }
                Factor::Dihedral(n) => {
                    Factor::dihedral(n)?;
                }
            }
        }
        factors
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.order()))
            .ok_or_else(|| Error::InvalidInput("group order overflows 64 bits".into()))?;
        Ok(Self { factors })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![Factor::cyclic(n)?])
    }

    pub fn dihedral(n: u64) -> Result<Self> {
        Self::new(vec![Factor::dihedral(n)?])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(Factor::order).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(self.factors.iter().map(Factor::identity).collect())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && self.factors.iter().zip(&g.0).all(|(f, x)| f.contains(x))
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementOutsideGroup {
                element: g.to_string(),
                group: self.to_string(),
            })
        }
    }

    /// All elements in vertex order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let n = self.order();
        (0..n).map(|i| self.element_at(i)).collect()
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![FactorElement::Cyclic(0); self.factors.len()];
        for (slot, f) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = f.element_at(index % f.order());
            index /= f.order();
        }
        GroupElement(coords)
    }

    pub fn index_of(&self, g: &GroupElement) -> u64 {
        self.factors
            .iter()
            .zip(&g.0)
            .fold(0, |acc, (f, x)| acc * f.order() + f.index_of(x))
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            self.factors
                .iter()
                .zip(g.0.iter().zip(&h.0))
                .map(|(f, (x, y))| f.multiply(x, y))
                .collect(),
        ))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            self.factors.iter().zip(&g.0).map(|(f, x)| f.inverse(x)).collect(),
        ))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// Product connection set `S = S_1 × … × S_t`.
///
/// Only obtainable through validation, so every instance is inverse-closed,
/// identity-free per factor, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConnectionSet {
    factors: Vec<Vec<FactorElement>>,
}

impl ConnectionSet {
    pub fn factor_sets(&self) -> &[Vec<FactorElement>] {
        &self.factors
    }

    /// `|S| = Π |S_k|`, the regularity degree of the Cayley graph.
    pub fn size(&self) -> usize {
        self.factors.iter().map(Vec::len).product()
    }

    /// The realized Cartesian product in lexicographic order.
    pub fn realized(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::with_capacity(self.factors.len())];
        for set in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    set.iter().map(move |x| {
                        let mut p = prefix.clone();
                        p.push(*x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }
}

/// Checks and canonicalizes per-factor connection sets against `group`.
pub fn validate_connection_set(
    group: &GroupSpec,
    sets: Vec<Vec<FactorElement>>,
) -> Result<ConnectionSet> {
    if sets.len() != group.factors().len() {
        return Err(Error::GroupMismatch(format!(
            "connection set has {} factor sets but {group} has {} factors",
            sets.len(),
            group.factors().len()
        )));
    }
    let mut canonical = Vec::with_capacity(sets.len());
    for (idx, (factor, set)) in group.factors().iter().zip(sets).enumerate() {
        let set: BTreeSet<FactorElement> = set.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyFactorSet { factor: idx });
        }
        if let Some(bad) = set.iter().find(|x| !factor.contains(x)) {
            return Err(Error::ElementOutsideGroup {
                element: bad.to_string(),
                group: factor.to_string(),
            });
        }
        if set.contains(&factor.identity()) {
            return Err(Error::IdentityInConnectionSet { factor: idx });
        }
        if let Some(bad) = set.iter().find(|x| !set.contains(&factor.inverse(x))) {
            return Err(Error::NotInverseClosed {
                factor: idx,
                element: bad.to_string(),
            });
        }
        canonical.push(set.into_iter().collect());
    }
    Ok(ConnectionSet { factors: canonical })
}

/// Exponents `{ i : 1 <= i <= n, gcd(i, n) = 1 }` of the unitary connection set,
/// reduced mod `n`.
pub fn unitary_exponents(n: u64) -> Result<Vec<u64>> {
    Ok(numtheory::residue_class(1, n)?
        .into_iter()
        .map(|i| i % n)
        .collect())
}

/// `S = { a^i : i ∈ B(1, n) }` on `Z_n`.
pub fn unitary_connection_set(n: u64) -> Result<ConnectionSet> {
    let group = GroupSpec::cyclic(n)?;
    if n <= 1 {
        return Err(Error::EmptyFactorSet { factor: 0 });
    }
    let exps = unitary_exponents(n)?;
    validate_connection_set(&group, vec![exps.into_iter().map(FactorElement::Cyclic).collect()])
}

/// Dense 0/1 adjacency matrix: `(u, v)` is 1 iff `u v^{-1} ∈ S`.
pub fn build_adjacency(group: &GroupSpec, s: &ConnectionSet, cap: usize) -> Result<Matrix> {
    let order = group.order();
    if order > cap as u64 {
        return Err(Error::TooLargeForDenseOracle {
            order: usize::try_from(order).unwrap_or(usize::MAX),
            cap,
        });
    }
    if s.factors.len() != group.factors().len() {
        return Err(Error::GroupMismatch(format!(
            "connection set does not match {group}"
        )));
    }
    let order = order as usize;
    let mut member = vec![false; order];
    for g in s.realized() {
        group.check(&g)?;
        member[group.index_of(&g) as usize] = true;
    }
    let elements = group.elements();
    let inverses: Vec<GroupElement> = elements
        .iter()
        .map(|v| group.inverse(v))
        .collect::<Result<_>>()?;
    let mut adj = Matrix::zeros(order);
    for (ui, u) in elements.iter().enumerate() {
        for (vi, v_inv) in inverses.iter().enumerate() {
            let prod = group.multiply(u, v_inv)?;
            if member[group.index_of(&prod) as usize] {
                adj.set(ui, vi, 1.0);
            }
        }
    }
    Ok(adj)
}
