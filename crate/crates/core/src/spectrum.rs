//! Closed-form Cayley graph spectra.
//!
//! Eigenvalues come from characters: each irreducible character `χ` of
//! degree `d` owns a block of `d` eigenvalues, each repeated `d` times, whose
//! `t`-th power sums equal `Σ_{s_1..s_t ∈ S} χ(s_1 ⋯ s_t)`. Degree-1 blocks are
//! read off from `t = 1`; degree-2 blocks are recovered from `t = 1, 2`.
//! Connection sets are Cartesian products, so every power sum factorizes into
//! a product of per-factor sums.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cayley::{validate_connection_set, ConnectionSet, FactorElement, GroupSpec};
use crate::characters::{CharacterTable, FactorCharacter};
use crate::error::{Error, Result};
use crate::numtheory;

/// Default tolerance for merging floating eigenvalues into one multiplicity.
pub const DEFAULT_GAP_TOL: f64 = 1e-6;

/// Tolerance on the imaginary residue of a real power sum, per unit of `|S|^t`.
const IMAG_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPair {
    pub value: f64,
    pub multiplicity: usize,
    /// Produced by an integer formula; the value is an exact integer.
    pub exact: bool,
}

/// Eigenvalues with multiplicities, values strictly descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pairs: Vec<SpectrumPair>,
    order: usize,
    /// Regularity degree `|S|` when known.
    degree: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumWire {
    pairs: Vec<SpectrumPair>,
    order: Option<usize>,
    degree: Option<usize>,
}

impl Spectrum {
    /// Groups `(value, multiplicity)` entries. Exact entries merge only when
    /// equal; otherwise consecutive values (after sorting) within `gap_tol`
    /// of their neighbour merge into their weighted mean.
    pub fn from_entries(mut entries: Vec<(f64, usize)>, exact: bool, gap_tol: f64) -> Self {
        entries.retain(|&(_, m)| m > 0);
        entries.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut pairs: Vec<SpectrumPair> = Vec::new();
        let mut last = f64::NAN;
        let mut weighted = 0.0;
        for (v, m) in entries {
            let merge = match pairs.last() {
                Some(_) if exact => v == last,
                Some(_) => (last - v).abs() <= gap_tol,
                None => false,
            };
            if merge {
                let p = pairs.last_mut().unwrap();
                p.multiplicity += m;
                weighted += v * m as f64;
                if !exact {
                    p.value = weighted / p.multiplicity as f64;
                }
            } else {
                weighted = v * m as f64;
                pairs.push(SpectrumPair {
                    value: v,
                    multiplicity: m,
                    exact,
                });
            }
            last = v;
        }
        let order = pairs.iter().map(|p| p.multiplicity).sum();
        Self {
            pairs,
            order,
            degree: None,
        }
    }

    pub fn from_exact(values: &BTreeMap<i64, usize>) -> Self {
        Self::from_entries(
            values.iter().map(|(&v, &m)| (v as f64, m)).collect(),
            true,
            0.0,
        )
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn pairs(&self) -> &[SpectrumPair] {
        &self.pairs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        !self.pairs.is_empty() && self.pairs.iter().all(|p| p.exact)
    }

    pub fn max_multiplicity(&self) -> Option<usize> {
        self.pairs.iter().map(|p| p.multiplicity).max()
    }

    pub fn multiplicity_of(&self, value: f64, tol: f64) -> usize {
        self.pairs
            .iter()
            .filter(|p| (p.value - value).abs() <= tol)
            .map(|p| p.multiplicity)
            .sum()
    }

    /// All eigenvalues, descending, repeated by multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.value, p.multiplicity))
            .collect()
    }

    /// `(Σ λ, Σ λ²)` counted with multiplicity: the traces of `A` and `A²`.
    pub fn power_traces(&self) -> (f64, f64) {
        self.pairs.iter().fold((0.0, 0.0), |(t1, t2), p| {
            let m = p.multiplicity as f64;
            (t1 + p.value * m, t2 + p.value * p.value * m)
        })
    }

    /// Checks zero trace and `trace(A²) = |G|·|S|` for a loop-free regular graph.
    pub fn check_trace_identities(&self, degree: usize) -> Result<()> {
        let (t1, t2) = self.power_traces();
        let want = (self.order * degree) as f64;
        if t1.abs() > 1e-8 * (1.0 + want) {
            return Err(Error::InternalInconsistency(format!(
                "spectrum trace {t1} is not zero"
            )));
        }
        if (t2 - want).abs() > 1e-6 * (1.0 + want) {
            return Err(Error::InternalInconsistency(format!(
                "spectrum second moment {t2} differs from |G||S| = {want}"
            )));
        }
        Ok(())
    }

    /// Same number of pairs, values within `tol`, multiplicities identical.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.pairs.len() == other.pairs.len()
            && self
                .pairs
                .iter()
                .zip(&other.pairs)
                .all(|(a, b)| a.multiplicity == b.multiplicity && (a.value - b.value).abs() <= tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }

    /// Decodes the JSON form and checks its invariants: finite values,
    /// strictly descending, positive multiplicities, matching `order`.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: SpectrumWire = serde_json::from_str(text).map_err(|e| Error::Parse {
            token: "spectrum json".into(),
            reason: e.to_string(),
        })?;
        let bad = |reason: String| Error::Parse {
            token: "spectrum json".into(),
            reason,
        };
        let mut order = 0usize;
        for (i, p) in wire.pairs.iter().enumerate() {
            if !p.value.is_finite() {
                return Err(bad(format!("pair {i} has a non-finite value")));
            }
            if p.multiplicity == 0 {
                return Err(bad(format!("pair {i} has zero multiplicity")));
            }
            if p.exact && p.value.fract() != 0.0 {
                return Err(bad(format!("pair {i} is marked exact but not an integer")));
            }
            if i > 0 && wire.pairs[i - 1].value <= p.value {
                return Err(bad(format!("pair {i} breaks strictly descending order")));
            }
            order = order
                .checked_add(p.multiplicity)
                .ok_or_else(|| bad("multiplicities overflow".into()))?;
        }
        if let Some(o) = wire.order {
            if o != order {
                return Err(bad(format!("order {o} but multiplicities sum to {order}")));
            }
        }
        Ok(Self {
            pairs: wire.pairs,
            order,
            degree: wire.degree,
        })
    }
}

/// Spectrum of the unitary Cayley graph on `Z_n`: every divisor `d` of `n`
/// contributes `μ(d)·φ(n)/φ(d)` with multiplicity `φ(d)`. Divisors with a
/// square factor all land on 0.
pub fn unitary_cyclic_spectrum(n: u64) -> Result<Spectrum> {
    if n <= 1 {
        return Err(Error::InvalidInput(format!(
            "unitary Cayley graph needs n >= 2, got {n}"
        )));
    }
    let phi_n = numtheory::euler_phi(n)?;
    let mut values: BTreeMap<i64, usize> = BTreeMap::new();
    for d in numtheory::divisors(n)? {
        let phi_d = numtheory::euler_phi(d)?;
        let value = (phi_n / phi_d) as i64 * numtheory::moebius(d)?;
        *values.entry(value).or_default() += phi_d as usize;
    }
    Ok(Spectrum::from_exact(&values).with_degree(phi_n as usize))
}

/// Circulant eigenvalues `λ_j = Σ_{i ∈ S} cos(2π i j / n)`, `j = 0..n`.
pub fn circulant_spectrum(n: u64, exponents: &[u64], gap_tol: f64) -> Result<Spectrum> {
    let group = GroupSpec::cyclic(n)?;
    let s = validate_connection_set(
        &group,
        vec![exponents.iter().map(|&i| FactorElement::Cyclic(i)).collect()],
    )?;
    let exps: Vec<u64> = s.factor_sets()[0]
        .iter()
        .map(|x| match x {
            FactorElement::Cyclic(i) => *i,
            _ => unreachable!(),
        })
        .collect();
    let entries = (0..n)
        .map(|j| {
            let v: f64 = exps
                .iter()
                .map(|&i| {
                    let e = ((i as u128 * j as u128) % n as u128) as f64;
                    (2.0 * PI * e / n as f64).cos()
                })
                .sum();
            (v, 1)
        })
        .collect();
    Ok(Spectrum::from_entries(entries, false, gap_tol).with_degree(exps.len()))
}

/// Per-factor `Σ_{s ∈ S_k} χ(s)` and `Σ_{s,s' ∈ S_k} χ(s s')`.
fn factor_power_sums(
    factor: &crate::cayley::Factor,
    set: &[FactorElement],
    chi: &FactorCharacter,
    t: u32,
) -> Complex64 {
    match t {
        1 => set.iter().map(|x| chi.eval(x)).sum(),
        _ => set
            .iter()
            .flat_map(|x| set.iter().map(move |y| (x, y)))
            .map(|(x, y)| chi.eval(&factor.multiply(x, y)))
            .sum(),
    }
}

fn real_part(z: Complex64, scale: f64) -> Result<f64> {
    if z.im.abs() > IMAG_TOL * scale.max(1.0) {
        return Err(Error::InternalInconsistency(format!(
            "power sum {z} is not real for an inverse-closed set"
        )));
    }
    Ok(z.re)
}

/// Power sum `Σ_{s_1..s_t ∈ S} χ(s_1 ⋯ s_t)` for `t ∈ {1, 2}` and the
/// character at `character` in [`CharacterTable::for_group`] order.
pub fn babai_power_sum(
    group: &GroupSpec,
    s: &ConnectionSet,
    character: usize,
    t: u32,
) -> Result<f64> {
    if !(1..=2).contains(&t) {
        return Err(Error::UnsupportedPowerIndex(t));
    }
    if s.factor_sets().len() != group.factors().len() {
        return Err(Error::GroupMismatch(format!(
            "connection set does not match {group}"
        )));
    }
    let table = CharacterTable::for_group(group)?;
    let chi = table.characters().get(character).ok_or_else(|| {
        Error::InvalidInput(format!(
            "character index {character} out of range (table has {})",
            table.len()
        ))
    })?;
    let z: Complex64 = group
        .factors()
        .iter()
        .zip(s.factor_sets())
        .zip(chi.factors())
        .map(|((f, set), c)| factor_power_sums(f, set, c, t))
        .product();
    real_part(z, (s.size() as f64).powi(t as i32))
}

/// Recovers the two eigenvalues of a degree-2 block from `p1 = λ1 + λ2` and
/// `p2 = λ1² + λ2²`, ordered descending.
pub fn eigenpair_from_power_sums(p1: f64, p2: f64, tol: f64) -> Result<(f64, f64)> {
    let disc = 2.0 * p2 - p1 * p1;
    if disc < -tol {
        return Err(Error::InconsistentPowerSums {
            p1,
            p2,
            discriminant: disc,
        });
    }
    let root = disc.max(0.0).sqrt();
    Ok(((p1 + root) / 2.0, (p1 - root) / 2.0))
}

/// Full spectrum of `X_S(G)` assembled from the character table of `G`.
///
/// Product characters with two or more degree-2 factors are rejected with
/// [`Error::UnsupportedDegree`].
pub fn group_spectrum(group: &GroupSpec, s: &ConnectionSet, gap_tol: f64) -> Result<Spectrum> {
    if s.factor_sets().len() != group.factors().len() {
        return Err(Error::GroupMismatch(format!(
            "connection set does not match {group}"
        )));
    }
    let factor_tables = group
        .factors()
        .iter()
        .map(|f| CharacterTable::for_group(&GroupSpec::new(vec![*f])?))
        .collect::<Result<Vec<_>>>()?;
    // sums[k][c] = (p1, p2) for character c of factor k; p2 only for degree 2.
    let sums: Vec<Vec<(FactorCharacter, Complex64, Option<Complex64>)>> = group
        .factors()
        .iter()
        .zip(s.factor_sets())
        .zip(&factor_tables)
        .map(|((f, set), table)| {
            table
                .characters()
                .iter()
                .map(|c| {
                    let chi = c.factors()[0];
                    let p1 = factor_power_sums(f, set, &chi, 1);
                    let p2 = if factor_tables.len() > 1 || chi.degree() == 2 {
                        Some(factor_power_sums(f, set, &chi, 2))
                    } else {
                        None
                    };
                    (chi, p1, p2)
                })
                .collect()
        })
        .collect();

    let size = s.size() as f64;
    let mut entries: Vec<(f64, usize)> = Vec::new();
    let mut index = vec![0usize; sums.len()];
    loop {
        let picked: Vec<_> = index.iter().zip(&sums).map(|(&i, row)| &row[i]).collect();
        let twos = picked.iter().filter(|(c, _, _)| c.degree() == 2).count();
        let p1 = real_part(picked.iter().map(|(_, p, _)| *p).product(), size)?;
        match twos {
            0 => entries.push((p1, 1)),
            1 => {
                let p2 = real_part(
                    picked
                        .iter()
                        .map(|(_, _, q)| q.expect("second power sums computed"))
                        .product(),
                    size * size,
                )?;
                let (hi, lo) = eigenpair_from_power_sums(p1, p2, IMAG_TOL * size * size)?;
                entries.push((hi, 2));
                entries.push((lo, 2));
            }
            k => return Err(Error::UnsupportedDegree(1 << k)),
        }
        // advance the mixed-radix counter, last factor fastest
        let mut k = sums.len();
        loop {
            if k == 0 {
                let spectrum = Spectrum::from_entries(entries, false, gap_tol).with_degree(s.size());
                return Ok(spectrum);
            }
            k -= 1;
            index[k] += 1;
            if index[k] < sums[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

/// Spectrum of a tensor product of graphs: all tuple-wise products of
/// eigenvalues, multiplicities multiplied.
pub fn tensor_spectrum(factor_spectra: &[Spectrum], gap_tol: f64) -> Result<Spectrum> {
    let (first, rest) = factor_spectra
        .split_first()
        .ok_or_else(|| Error::InvalidInput("tensor product of zero spectra".into()))?;
    let exact = factor_spectra.iter().all(Spectrum::is_exact);
    let mut acc: Vec<(f64, usize)> = first.pairs.iter().map(|p| (p.value, p.multiplicity)).collect();
    for sp in rest {
        acc = acc
            .iter()
            .flat_map(|&(v, m)| {
                sp.pairs
                    .iter()
                    .map(move |p| (v * p.value, m * p.multiplicity))
            })
            .collect();
    }
    let mut out = Spectrum::from_entries(acc, exact, gap_tol);
    if let Some(d) = factor_spectra
        .iter()
        .map(Spectrum::degree)
        .try_fold(1usize, |a, d| d.map(|d| a * d))
    {
        out = out.with_degree(d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_connection, parse_group};

    fn pairs(s: &Spectrum) -> Vec<(f64, usize)> {
        s.pairs().iter().map(|p| (p.value, p.multiplicity)).collect()
    }

    #[test]
    fn unitary_examples() {
        assert_eq!(pairs(&unitary_cyclic_spectrum(5).unwrap()), vec![(4.0, 1), (-1.0, 4)]);
        assert_eq!(
            pairs(&unitary_cyclic_spectrum(4).unwrap()),
            vec![(2.0, 1), (0.0, 2), (-2.0, 1)]
        );
        assert_eq!(
            pairs(&unitary_cyclic_spectrum(6).unwrap()),
            vec![(2.0, 1), (1.0, 2), (-1.0, 2), (-2.0, 1)]
        );
        assert!(unitary_cyclic_spectrum(1).is_err());
        assert!(unitary_cyclic_spectrum(0).is_err());
        assert!(unitary_cyclic_spectrum(12).unwrap().is_exact());
    }

    #[test]
    fn circulant_examples() {
        let s = circulant_spectrum(4, &[1, 3], DEFAULT_GAP_TOL).unwrap();
        assert!(s.approx_eq(&unitary_cyclic_spectrum(4).unwrap(), 1e-12));
        let s = circulant_spectrum(3, &[1, 2], DEFAULT_GAP_TOL).unwrap();
        assert!(s.approx_eq(&Spectrum::from_entries(vec![(2.0, 1), (-1.0, 2)], true, 0.0), 1e-12));
        assert!(circulant_spectrum(6, &[1], DEFAULT_GAP_TOL).is_err());
        assert!(circulant_spectrum(6, &[0, 1, 5], DEFAULT_GAP_TOL).is_err());
    }

    #[test]
    fn circulant_matches_unitary_closed_form() {
        for n in 2..=60u64 {
            let exps = crate::cayley::unitary_exponents(n).unwrap();
            let c = circulant_spectrum(n, &exps, DEFAULT_GAP_TOL).unwrap();
            let u = unitary_cyclic_spectrum(n).unwrap();
            assert!(c.approx_eq(&u, 1e-8), "n = {n}");
        }
    }

    #[test]
    fn lemma_class_constancy_of_circulant_eigenvalues() {
        for n in 2..=60u64 {
            let exps = crate::cayley::unitary_exponents(n).unwrap();
            for d in numtheory::divisors(n).unwrap() {
                let want = numtheory::ramanujan_hoelder(n / d, n).unwrap() as f64;
                for j in numtheory::residue_class(n / d, n).unwrap() {
                    let lambda: f64 = exps
                        .iter()
                        .map(|&i| (2.0 * PI * ((i * j) % n) as f64 / n as f64).cos())
                        .sum();
                    assert!((lambda - want).abs() < 1e-8, "n={n} d={d} j={j}");
                }
            }
        }
    }

    #[test]
    fn unitary_values_are_integers_with_trace_identities() {
        for n in 2..=60u64 {
            let s = unitary_cyclic_spectrum(n).unwrap();
            assert_eq!(s.order() as u64, n);
            for p in s.pairs() {
                assert!(p.exact && p.value.fract() == 0.0);
            }
            s.check_trace_identities(numtheory::euler_phi(n).unwrap() as usize)
                .unwrap();
        }
    }

    /// Enumerates `S^t` directly instead of factorizing the sum.
    fn power_sum_by_enumeration(group: &GroupSpec, s: &ConnectionSet, idx: usize, t: u32) -> f64 {
        let table = CharacterTable::for_group(group).unwrap();
        let chi = &table.characters()[idx];
        let realized = s.realized();
        let z: Complex64 = match t {
            1 => realized.iter().map(|g| chi.eval(g)).sum(),
            _ => realized
                .iter()
                .flat_map(|a| realized.iter().map(move |b| (a, b)))
                .map(|(a, b)| chi.eval(&group.multiply(a, b).unwrap()))
                .sum(),
        };
        assert!(z.im.abs() < 1e-9);
        z.re
    }

    #[test]
    fn babai_examples() {
        let g = parse_group("dihedral:5").unwrap();
        let s = parse_connection(&g, "explicit:r1,r4").unwrap();
        // trivial character χ_{m+2} is last
        assert_eq!(babai_power_sum(&g, &s, 3, 1).unwrap(), 2.0);
        let p1 = babai_power_sum(&g, &s, 0, 1).unwrap();
        assert!((p1 - 4.0 * (2.0 * PI / 5.0).cos()).abs() < 1e-12);
        assert!((p1 - 1.2360679775).abs() < 1e-9);
        let p2 = babai_power_sum(&g, &s, 0, 2).unwrap();
        // S² = {a², e, e, a³}: 2·χ_1(e) + χ_1(a²) + χ_1(a³)
        let want = 4.0 + 2.0 * 2.0 * (4.0 * PI / 5.0).cos();
        assert!((p2 - want).abs() < 1e-12);
        assert_eq!(
            babai_power_sum(&g, &s, 0, 3).unwrap_err(),
            Error::UnsupportedPowerIndex(3)
        );
        assert!(babai_power_sum(&g, &s, 4, 1).is_err());
    }

    #[test]
    fn babai_factorization_matches_enumeration() {
        for (gs, cs) in [
            ("cyclic:3 x dihedral:5", "explicit:1,2 ; explicit:r1,r4"),
            ("dihedral:3 x cyclic:4", "explicit:s0,s1,s2 ; explicit:1,3"),
            ("cyclic:6 x cyclic:4", "unitary ; explicit:2"),
            ("dihedral:5", "explicit:r2,r3,s1"),
        ] {
            let g = parse_group(gs).unwrap();
            let s = parse_connection(&g, cs).unwrap();
            let n = CharacterTable::for_group(&g).unwrap().len();
            for idx in 0..n {
                for t in 1..=2 {
                    let a = babai_power_sum(&g, &s, idx, t).unwrap();
                    let b = power_sum_by_enumeration(&g, &s, idx, t);
                    assert!((a - b).abs() < 1e-9, "{gs} idx {idx} t {t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn eigenpair_examples() {
        assert_eq!(eigenpair_from_power_sums(0.0, 2.0, 1e-9).unwrap(), (1.0, -1.0));
        assert_eq!(eigenpair_from_power_sums(2.0, 2.0, 1e-9).unwrap(), (1.0, 1.0));
        assert!(matches!(
            eigenpair_from_power_sums(2.0, 1.0, 1e-9),
            Err(Error::InconsistentPowerSums { .. })
        ));
        // tiny negative discriminant clamps to a repeated root
        let (a, b) = eigenpair_from_power_sums(2.0, 2.0 - 1e-12, 1e-9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn group_spectrum_examples() {
        let g = parse_group("cyclic:2 x cyclic:2").unwrap();
        let s = parse_connection(&g, "explicit:1 ; explicit:1").unwrap();
        let sp = group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap();
        assert!(sp.approx_eq(&Spectrum::from_entries(vec![(1.0, 2), (-1.0, 2)], true, 0.0), 1e-12));

        for n in 2..=30u64 {
            let g = GroupSpec::cyclic(n).unwrap();
            let s = crate::cayley::unitary_connection_set(n).unwrap();
            let sp = group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap();
            assert!(sp.approx_eq(&unitary_cyclic_spectrum(n).unwrap(), 1e-8));
        }

        let g = parse_group("dihedral:3 x dihedral:3").unwrap();
        let s = parse_connection(&g, "explicit:r1,r2 ; explicit:s0,s1,s2").unwrap();
        assert_eq!(
            group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap_err(),
            Error::UnsupportedDegree(4)
        );
    }

    #[test]
    fn dihedral_cycle_spectrum() {
        // X_{a, a^4}(D_5) is two disjoint 5-cycles.
        let g = parse_group("dihedral:5").unwrap();
        let s = parse_connection(&g, "explicit:r1,r4").unwrap();
        let sp = group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap();
        let c5 = circulant_spectrum(5, &[1, 4], DEFAULT_GAP_TOL).unwrap();
        let two = Spectrum::from_entries(vec![(1.0, 2)], true, 0.0);
        let want = tensor_spectrum(&[two, c5], DEFAULT_GAP_TOL).unwrap();
        assert!(sp.approx_eq(&want, 1e-9));
        sp.check_trace_identities(2).unwrap();
    }

    #[test]
    fn tensor_examples() {
        let u6 = unitary_cyclic_spectrum(6).unwrap();
        assert_eq!(tensor_spectrum(std::slice::from_ref(&u6), DEFAULT_GAP_TOL).unwrap(), u6);
        let pm = Spectrum::from_entries(vec![(1.0, 1), (-1.0, 1)], true, 0.0);
        let t = tensor_spectrum(&[pm.clone(), pm], DEFAULT_GAP_TOL).unwrap();
        assert_eq!(pairs(&t), vec![(1.0, 2), (-1.0, 2)]);
        assert!(tensor_spectrum(&[], DEFAULT_GAP_TOL).is_err());
    }

    #[test]
    fn group_and_tensor_agree_on_products() {
        let cases = [
            ("cyclic:3 x dihedral:5", "explicit:1,2 ; explicit:r1,r4"),
            ("cyclic:5 x dihedral:5", "unitary ; explicit:r1,r2,r3,r4"),
            ("cyclic:4 x cyclic:6", "unitary ; unitary"),
            ("dihedral:7 x cyclic:8", "explicit:r2,r5,s3 ; gcdclass:2"),
            ("cyclic:2 x dihedral:3 x cyclic:3", "explicit:1 ; explicit:s0,s1 ; explicit:1,2"),
        ];
        for (gs, cs) in cases {
            let g = parse_group(gs).unwrap();
            let s = parse_connection(&g, cs).unwrap();
            let whole = group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap();
            let parts: Vec<Spectrum> = g
                .factors()
                .iter()
                .zip(s.factor_sets())
                .map(|(f, set)| {
                    let fg = GroupSpec::new(vec![*f]).unwrap();
                    let fs = validate_connection_set(&fg, vec![set.clone()]).unwrap();
                    group_spectrum(&fg, &fs, DEFAULT_GAP_TOL).unwrap()
                })
                .collect();
            let tensor = tensor_spectrum(&parts, DEFAULT_GAP_TOL).unwrap();
            assert!(whole.approx_eq(&tensor, 1e-6), "{gs}");
            whole.check_trace_identities(s.size()).unwrap();
            assert_eq!(whole.order() as u64, g.order());
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = unitary_cyclic_spectrum(12).unwrap();
        let back = Spectrum::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(Spectrum::from_json("{").is_err());
        assert!(Spectrum::from_json(
            r#"{"pairs":[{"value":1.0,"multiplicity":1,"exact":false},{"value":2.0,"multiplicity":1,"exact":false}],"order":2,"degree":null}"#
        )
        .is_err());
        assert!(Spectrum::from_json(
            r#"{"pairs":[{"value":1.0,"multiplicity":0,"exact":false}],"order":0,"degree":null}"#
        )
        .is_err());
        assert!(Spectrum::from_json(
            r#"{"pairs":[{"value":1.5,"multiplicity":1,"exact":true}],"order":1,"degree":null}"#
        )
        .is_err());
        assert!(Spectrum::from_json(
            r#"{"pairs":[{"value":1.0,"multiplicity":2,"exact":true}],"order":3,"degree":null}"#
        )
        .is_err());
    }
}
