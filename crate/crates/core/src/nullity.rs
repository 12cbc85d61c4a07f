//! Maximum-nullity lower bounds and minimum-rank upper bounds.
//!
//! Any eigenvalue multiplicity of a graph is a lower bound on its maximum
//! nullity `M(G)`, and `mr(G) = |G| - M(G)`. The unitary cyclic and product
//! formulas below are reported as claims; [`check_bound_against_oracle`]
//! audits a claim against the multiplicities of the explicit graph.

use serde::Serialize;

use crate::cayley::{ConnectionSet, GroupSpec};
use crate::error::{Error, Result};
use crate::numtheory;
use crate::oracle::{oracle_spectrum, OracleOptions};
use crate::spectrum::Spectrum;

/// Where a claimed bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// Largest multiplicity of a computed spectrum.
    Spectrum,
    /// Divisor formula for the unitary Cayley graph on `Z_n`.
    UnitaryCyclic,
    /// Unitary cyclic bound scaled by `Π N_{G_k}(ℓ_k)·|S_k|`; not independently verified.
    ProductClaim,
    /// A caller-supplied number.
    External,
}

/// One divisor's contribution in the unitary cyclic formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorRow {
    pub d: u64,
    pub phi: u64,
    pub moebius: i64,
    /// `μ(d)·φ(n)/φ(d)`.
    pub eigenvalue: i64,
    /// `φ(d)` times the product scale (1 for the plain cyclic case).
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub order: u64,
    pub claimed: u64,
    pub oracle_max_multiplicity: Option<u64>,
    pub consistent: Option<bool>,
    /// The bound `mr_upper` is derived from: the claim, unless the oracle
    /// refutes it, in which case the oracle's maximum multiplicity.
    pub effective_bound: u64,
    pub mr_upper: i64,
    pub source: BoundSource,
    pub per_divisor: Vec<DivisorRow>,
}

impl BoundReport {
    fn new(order: u64, claimed: u64, source: BoundSource) -> Self {
        Self {
            order,
            claimed,
            oracle_max_multiplicity: None,
            consistent: None,
            effective_bound: claimed,
            mr_upper: order as i64 - claimed as i64,
            source,
            per_divisor: Vec::new(),
        }
    }

    /// Attaches an oracle measurement and recomputes the verdict.
    pub fn with_oracle(mut self, oracle_max: u64) -> Self {
        let consistent = self.claimed <= oracle_max;
        self.oracle_max_multiplicity = Some(oracle_max);
        self.consistent = Some(consistent);
        self.effective_bound = if consistent { self.claimed } else { oracle_max };
        self.mr_upper = self.order as i64 - self.effective_bound as i64;
        self
    }
}

/// Largest eigenvalue multiplicity of `spec`.
pub fn max_multiplicity_bound(spec: &Spectrum) -> Result<u64> {
    spec.max_multiplicity()
        .map(|m| m as u64)
        .ok_or_else(|| Error::InvalidInput("empty spectrum has no multiplicity bound".into()))
}

pub fn spectrum_bound(spec: &Spectrum) -> Result<BoundReport> {
    Ok(BoundReport::new(
        spec.order() as u64,
        max_multiplicity_bound(spec)?,
        BoundSource::Spectrum,
    ))
}

fn divisor_rows(n: u64, scale: u64) -> Result<Vec<DivisorRow>> {
    let phi_n = numtheory::euler_phi(n)?;
    numtheory::divisors(n)?
        .into_iter()
        .map(|d| {
            let phi = numtheory::euler_phi(d)?;
            let moebius = numtheory::moebius(d)?;
            Ok(DivisorRow {
                d,
                phi,
                moebius,
                eigenvalue: (phi_n / phi) as i64 * moebius,
                multiplicity: phi * scale,
            })
        })
        .collect()
}

/// Bound for the unitary Cayley graph on `Z_n`: `max_d φ(d)` when `n` is
/// square-free, otherwise the larger of that and the pooled zero multiplicity
/// `Σ_{d | n, d not square-free} φ(d)`.
pub fn unitary_cyclic_bound(n: u64) -> Result<BoundReport> {
    if n <= 1 {
        return Err(Error::InvalidInput(format!(
            "unitary Cayley graph needs n >= 2, got {n}"
        )));
    }
    let rows = divisor_rows(n, 1)?;
    let best_single = rows.iter().map(|r| r.phi).max().unwrap_or(1);
    let zero_pool: u64 = rows.iter().filter(|r| r.moebius == 0).map(|r| r.phi).sum();
    let claimed = best_single.max(zero_pool);
    let mut report = BoundReport::new(n, claimed, BoundSource::UnitaryCyclic);
    report.per_divisor = rows;
    Ok(report)
}

/// Data for one extra factor `G_k` of a product bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductFactorData {
    /// `N_{G_k}(ℓ_k)`.
    pub index_count: u64,
    /// `|S_k|`.
    pub set_size: u64,
    /// `|G_k|`, needed for the order of the product graph.
    pub group_order: u64,
}

/// Product bound: the unitary cyclic bound of `n` multiplied by
/// `Π_k N_{G_k}(ℓ_k)·|S_k|`. This is reported as a claim only; it can exceed
/// the order of the graph.
pub fn product_unitary_bound(n: u64, factors: &[ProductFactorData]) -> Result<BoundReport> {
    let base = unitary_cyclic_bound(n)?;
    if factors.is_empty() {
        return Ok(base);
    }
    let overflow = || Error::InvalidInput("product bound overflows 64 bits".into());
    let scale = factors.iter().try_fold(1u64, |acc, f| {
        acc.checked_mul(f.index_count)?.checked_mul(f.set_size)
    });
    let scale = scale.ok_or_else(overflow)?;
    let order = factors
        .iter()
        .try_fold(n, |acc, f| acc.checked_mul(f.group_order))
        .ok_or_else(overflow)?;
    let claimed = base.claimed.checked_mul(scale).ok_or_else(overflow)?;
    let mut report = BoundReport::new(order, claimed, BoundSource::ProductClaim);
    report.per_divisor = divisor_rows(n, scale)?;
    Ok(report)
}

/// Measures the largest multiplicity of the explicit graph and records
/// whether `claimed` is at most that. Never fails on an inconsistent claim.
pub fn check_bound_against_oracle(
    group: &GroupSpec,
    s: &ConnectionSet,
    claimed: u64,
    opts: &OracleOptions,
) -> Result<BoundReport> {
    audit(BoundReport::new(group.order(), claimed, BoundSource::External), group, s, opts)
}

/// Fills the oracle fields of an existing report.
pub fn audit(
    report: BoundReport,
    group: &GroupSpec,
    s: &ConnectionSet,
    opts: &OracleOptions,
) -> Result<BoundReport> {
    let oracle = oracle_spectrum(group, s, opts)?;
    Ok(report.with_oracle(max_multiplicity_bound(&oracle)?))
}
