//! Irreducible character tables of cyclic groups, odd dihedral groups and
//! their direct products, plus the census of characters that are constant on
//! a connection set.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::cayley::{Factor, FactorElement, GroupElement, GroupSpec};
use crate::error::{Error, Result};
use crate::numtheory::gcd;

/// Tolerance for comparing complex character values that lack an exact tag.
pub const VALUE_TOL: f64 = 1e-9;

/// The root of unity `exp(2πi · num / den)` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "root of unity needs a positive order");
        let num = num % den;
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_complex(self) -> Complex64 {
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            (k, d) => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64),
        }
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        let den = self.den / gcd(self.den, other.den) * other.den;
        let a = (self.num as u128 * (den / self.den) as u128) as u64;
        let b = (other.num as u128 * (den / other.den) as u128) as u64;
        Self::new((a as u128 + b as u128).rem_euclid(den as u128) as u64, den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (k, d) => write!(f, "e(2pi i {k}/{d})"),
        }
    }
}

/// One irreducible character of a single factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FactorCharacter {
    /// `ρ_j(a^k) = ω^{jk}` on `Z_n`.
    Cyclic { n: u64, j: u64 },
    /// Degree-2 `χ_j` on `D_n`: `ω^{jk} + ω^{-jk}` on `a^k`, 0 on reflections.
    DihedralTwo { n: u64, j: u64 },
    /// `χ_{m+1}`: 1 on rotations, -1 on reflections.
    DihedralSign { n: u64 },
    /// `χ_{m+2}`: constant 1.
    DihedralTrivial { n: u64 },
}

impl FactorCharacter {
    pub fn degree(&self) -> usize {
        match self {
            FactorCharacter::DihedralTwo { .. } => 2,
            _ => 1,
        }
    }

    pub fn factor(&self) -> Factor {
        match *self {
            FactorCharacter::Cyclic { n, .. } => Factor::Cyclic(n),
            FactorCharacter::DihedralTwo { n, .. }
            | FactorCharacter::DihedralSign { n }
            | FactorCharacter::DihedralTrivial { n } => Factor::Dihedral(n),
        }
    }

    /// Exact value when it is a single root of unity (every degree-1 case).
    pub fn exact(&self, x: &FactorElement) -> Option<RootOfUnity> {
        match (*self, *x) {
            (FactorCharacter::Cyclic { n, j }, FactorElement::Cyclic(k)) => {
                Some(RootOfUnity::new(((j as u128 * k as u128) % n as u128) as u64, n))
            }
            (FactorCharacter::DihedralTrivial { .. }, FactorElement::Dihedral { .. }) => {
                Some(RootOfUnity::ONE)
            }
            (FactorCharacter::DihedralSign { .. }, FactorElement::Dihedral { reflection, .. }) => {
                Some(if reflection {
                    RootOfUnity::new(1, 2)
                } else {
                    RootOfUnity::ONE
                })
            }
            _ => None,
        }
    }

    pub fn eval(&self, x: &FactorElement) -> Complex64 {
        if let Some(r) = self.exact(x) {
            return r.to_complex();
        }
        match (*self, *x) {
            (
                FactorCharacter::DihedralTwo { n, j },
                FactorElement::Dihedral {
                    reflection,
                    rotation,
                },
            ) => {
                if reflection {
                    Complex64::new(0.0, 0.0)
                } else {
                    let e = ((j as u128 * rotation as u128) % n as u128) as f64;
                    Complex64::new(2.0 * (2.0 * PI * e / n as f64).cos(), 0.0)
                }
            }
            _ => panic!("character {self} evaluated on foreign element {x}"),
        }
    }
}

impl fmt::Display for FactorCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorCharacter::Cyclic { j, .. } => write!(f, "rho_{j}"),
            FactorCharacter::DihedralTwo { j, .. } => write!(f, "chi_{j}"),
            FactorCharacter::DihedralSign { n } => write!(f, "chi_{}", n / 2 + 1),
            FactorCharacter::DihedralTrivial { n } => write!(f, "chi_{}", n / 2 + 2),
        }
    }
}

/// Irreducible character of a product group: a tuple of factor characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    factors: Vec<FactorCharacter>,
}

impl Character {
    pub fn factors(&self) -> &[FactorCharacter] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(FactorCharacter::degree).product()
    }

    /// Number of degree-2 factors in the tuple.
    pub fn degree_two_factors(&self) -> usize {
        self.factors.iter().filter(|c| c.degree() == 2).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|c| match *c {
            FactorCharacter::Cyclic { j, .. } => j == 0,
            FactorCharacter::DihedralTrivial { .. } => true,
            _ => false,
        })
    }

    pub fn eval(&self, g: &GroupElement) -> Complex64 {
        self.factors
            .iter()
            .zip(g.coords())
            .map(|(c, x)| c.eval(x))
            .product()
    }

    pub fn exact(&self, g: &GroupElement) -> Option<RootOfUnity> {
        self.factors
            .iter()
            .zip(g.coords())
            .try_fold(RootOfUnity::ONE, |acc, (c, x)| Some(acc * c.exact(x)?))
    }

    pub fn label(&self) -> String {
        self.factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// Complete list of irreducible characters of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    group: GroupSpec,
    characters: Vec<Character>,
}

impl CharacterTable {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Table of the given group, built as the product of its factor tables.
    pub fn for_group(group: &GroupSpec) -> Result<Self> {
        let tables = group
            .factors()
            .iter()
            .map(|f| match *f {
                Factor::Cyclic(n) => cyclic_character_table(n),
                Factor::Dihedral(n) => dihedral_character_table(n),
            })
            .collect::<Result<Vec<_>>>()?;
        product_character_table(&tables)
    }

    /// Value matrix: row per character, column per group element (vertex order).
    pub fn values(&self) -> Vec<Vec<Complex64>> {
        let elements = self.group.elements();
        self.characters
            .iter()
            .map(|c| elements.iter().map(|g| c.eval(g)).collect())
            .collect()
    }

    pub fn report(&self) -> CharacterTableReport {
        let elements = self.group.elements();
        CharacterTableReport {
            group: self.group.to_string(),
            order: self.group.order(),
            elements: elements.iter().map(ToString::to_string).collect(),
            characters: self
                .characters
                .iter()
                .map(|c| CharacterRow {
                    label: c.label(),
                    degree: c.degree(),
                    values: elements
                        .iter()
                        .map(|g| {
                            let v = c.eval(g);
                            CharacterEntry {
                                re: clean(v.re),
                                im: clean(v.im),
                                root: c.exact(g).map(|r| format!("{}/{}", r.num, r.den)),
                            }
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

/// Serializable view of a character table.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTableReport {
    pub group: String,
    pub order: u64,
    pub elements: Vec<String>,
    pub characters: Vec<CharacterRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterRow {
    pub label: String,
    pub degree: usize,
    pub values: Vec<CharacterEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterEntry {
    pub re: f64,
    pub im: f64,
    /// `k/d` when the value is `exp(2πi k/d)`.
    pub root: Option<String>,
}

pub fn cyclic_character_table(n: u64) -> Result<CharacterTable> {
    let group = GroupSpec::cyclic(n)?;
    Ok(CharacterTable {
        group,
        characters: (0..n)
            .map(|j| Character {
                factors: vec![FactorCharacter::Cyclic { n, j }],
            })
            .collect(),
    })
}

/// Character table of `D_n` for odd `n = 2m + 1`: `χ_1..χ_m` of degree 2,
/// then `χ_{m+1}` (sign on reflections) and `χ_{m+2}` (trivial).
pub fn dihedral_character_table(n: u64) -> Result<CharacterTable> {
    let group = GroupSpec::dihedral(n)?;
    let m = n / 2;
    let mut characters: Vec<Character> = (1..=m)
        .map(|j| Character {
            factors: vec![FactorCharacter::DihedralTwo { n, j }],
        })
        .collect();
    characters.push(Character {
        factors: vec![FactorCharacter::DihedralSign { n }],
    });
    characters.push(Character {
        factors: vec![FactorCharacter::DihedralTrivial { n }],
    });
    Ok(CharacterTable { group, characters })
}

/// Characters of a direct product are the tuple-wise products of factor
/// characters, with value `Π χ_k(g_k)`. The first table is the outermost loop.
pub fn product_character_table(tables: &[CharacterTable]) -> Result<CharacterTable> {
    let (first, rest) = tables
        .split_first()
        .ok_or_else(|| Error::InvalidInput("product of zero character tables".into()))?;
    let mut factors = first.group.factors().to_vec();
    let mut characters = first.characters.clone();
    for t in rest {
        factors.extend_from_slice(t.group.factors());
        characters = characters
            .iter()
            .flat_map(|a| {
                t.characters.iter().map(move |b| {
                    let mut f = a.factors.clone();
                    f.extend_from_slice(&b.factors);
                    Character { factors: f }
                })
            })
            .collect();
    }
    Ok(CharacterTable {
        group: GroupSpec::new(factors)?,
        characters,
    })
}

/// `N_G(ℓ)`: how many degree-1 characters take the constant value `ℓ` on `S`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexCensus {
    entries: BTreeMap<RootOfUnity, usize>,
}

impl IndexCensus {
    pub fn count(&self, ell: RootOfUnity) -> usize {
        self.entries.get(&ell).copied().unwrap_or(0)
    }

    /// Lookup by complex value, matching within [`VALUE_TOL`].
    pub fn count_value(&self, ell: Complex64) -> usize {
        self.entries
            .iter()
            .filter(|(k, _)| (k.to_complex() - ell).norm() < VALUE_TOL)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (RootOfUnity, usize)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// The most populated `ℓ`; ties go to the smaller key, so `ℓ = 1` wins a tie.
    pub fn largest(&self) -> Option<(RootOfUnity, usize)> {
        self.entries()
            .fold(None, |best: Option<(RootOfUnity, usize)>, (k, v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((k, v)),
            })
    }
}

/// Counts degree-1 characters of `table` that are constant on `s`, keyed by
/// the common value. Degree-2 characters never enter the census.
pub fn l_index_census(table: &CharacterTable, s: &[GroupElement]) -> Result<IndexCensus> {
    if s.is_empty() {
        return Err(Error::InvalidInput("census needs a nonempty set".into()));
    }
    if let Some(bad) = s.iter().find(|g| !table.group.contains(g)) {
        return Err(Error::ElementOutsideGroup {
            element: bad.to_string(),
            group: table.group.to_string(),
        });
    }
    let mut census = IndexCensus::default();
    for c in table.characters.iter().filter(|c| c.degree() == 1) {
        let first = c.exact(&s[0]).expect("degree-1 values are roots of unity");
        if s[1..].iter().all(|g| c.exact(g) == Some(first)) {
            *census.entries.entry(first).or_default() += 1;
        }
    }
    Ok(census)
}
