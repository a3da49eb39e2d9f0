//! Noisy dichotomic parity measurement.
//!
//! The observable is diagonal in the `m` basis,
//! `A_mm = (−1)^(j−m) · b^((m − μ(m))²)`, where `μ(m)` is the centre of the
//! block that `m` belongs to and `b = exp(−1/(2σ²))` is the measurability.
//! The POVM is `E± = (I ± A)/2`, and the first outcome prepares
//! `ρ± = E±^{1/2} ρ₀ E±^{1/2} / p±` from `ρ₀ = I/d`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, HermitianOperator};
use crate::spin::SpinSystem;

/// Outcome label of the dichotomic measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One block of the partition: centre `μ` and its member `m` values, all
/// stored as twice their value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub twice_mu: i32,
    pub twice_members: BTreeSet<i32>,
}

impl Block {
    pub fn new(twice_mu: i32, twice_members: impl IntoIterator<Item = i32>) -> Self {
        Self {
            twice_mu,
            twice_members: twice_members.into_iter().collect(),
        }
    }
}

/// Assignment of every `m` to a Gaussian centre `μ`.
///
/// Text form: `"mu:m1,m2,…;mu:m1,…"` with every number written as `2m`,
/// e.g. `"5:5,3,1;-5:-1,-3,-5"` for the spin-5/2 default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    blocks: Vec<Block>,
}

impl PartitionSpec {
    /// Checks that blocks are non-empty and pairwise disjoint.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut seen = BTreeSet::new();
        for block in &blocks {
            if block.twice_members.is_empty() {
                return Err(Error::InvalidPartition(format!(
                    "block with 2mu = {} has no members",
                    block.twice_mu
                )));
            }
            for &m in &block.twice_members {
                if !seen.insert(m) {
                    return Err(Error::InvalidPartition(format!(
                        "2m = {m} appears in more than one block"
                    )));
                }
            }
        }
        Ok(Self { blocks })
    }

    /// Two blocks centred at `±j`: positive `m` to `+j`, negative `m` to `−j`.
    ///
    /// Integer spins are rejected since `m = 0` belongs to neither block.
    pub fn default_for(sys: &SpinSystem) -> Result<Self> {
        if !sys.is_half_integer() {
            return Err(Error::IntegerSpinPartition(sys.two_j()));
        }
        let tj = sys.two_j() as i32;
        let plus = Block::new(tj, sys.twice_m_values().filter(|&m| m > 0));
        let minus = Block::new(-tj, sys.twice_m_values().filter(|&m| m < 0));
        Self::new(vec![plus, minus])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of blocks (the measurement resolution).
    pub fn resolution(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, twice_m: i32) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|b| b.twice_members.contains(&twice_m))
    }

    /// Checks coverage and ranges against a concrete spin.
    pub fn validate_for(&self, sys: &SpinSystem) -> Result<()> {
        let tj = sys.two_j() as i32;
        for block in &self.blocks {
            if block.twice_mu.abs() > tj {
                return Err(Error::InvalidPartition(format!(
                    "2mu = {} outside [-{tj}, {tj}]",
                    block.twice_mu
                )));
            }
            if let Some(&m) = block
                .twice_members
                .iter()
                .find(|&&m| sys.index_of(m).is_none())
            {
                return Err(Error::InvalidPartition(format!(
                    "2m = {m} is not a valid m for two_j = {tj}"
                )));
            }
        }
        if let Some(m) = sys.twice_m_values().find(|&m| self.block_of(m).is_none()) {
            return Err(Error::InvalidPartition(format!(
                "2m = {m} is not assigned to any block"
            )));
        }
        Ok(())
    }

    /// True when the block set maps onto itself under `m → −m`, `μ → −μ`.
    pub fn is_symmetric(&self) -> bool {
        self.blocks.iter().all(|b| {
            let mirrored: BTreeSet<i32> = b.twice_members.iter().map(|m| -m).collect();
            self.blocks
                .iter()
                .any(|c| c.twice_mu == -b.twice_mu && c.twice_members == mirrored)
        })
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}:", block.twice_mu)?;
            // descending, matching basis order
            let members: Vec<String> = block
                .twice_members
                .iter()
                .rev()
                .map(|m| m.to_string())
                .collect();
            f.write_str(&members.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for PartitionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| Error::InvalidPartition(format!("not an integer: {t:?}")))
        };
        let mut blocks = Vec::new();
        for chunk in s.split(';').filter(|c| !c.trim().is_empty()) {
            let (mu, members) = chunk
                .split_once(':')
                .ok_or_else(|| Error::InvalidPartition(format!("block {chunk:?} lacks ':'")))?;
            let members = members
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(parse_int)
                .collect::<Result<Vec<_>>>()?;
            blocks.push(Block::new(parse_int(mu)?, members));
        }
        Self::new(blocks)
    }
}

/// `b = exp(−1/(2σ²))`.
pub fn b_from_sigma(sigma: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::NoFiniteWidth(format!(
            "sigma = {sigma} must be positive and finite"
        )));
    }
    Ok((-1.0 / (2.0 * sigma * sigma)).exp())
}

/// Inverse of [`b_from_sigma`]; `b = 0` and `b = 1` have no finite width.
pub fn sigma_from_b(b: f64) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::NoFiniteWidth(format!(
            "b = {b} has no finite sigma (need 0 < b < 1)"
        )));
    }
    Ok((-1.0 / (2.0 * b.ln())).sqrt())
}

#[derive(Debug, Clone)]
pub struct NoisyDichotomicMeasurement {
    b: f64,
    partition: PartitionSpec,
    diagonal: Vec<f64>,
    observable: HermitianOperator,
    e_plus: HermitianOperator,
    e_minus: HermitianOperator,
}

impl NoisyDichotomicMeasurement {
    pub fn new(sys: &SpinSystem, b: f64, partition: PartitionSpec) -> Result<Self> {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::MeasurabilityOutOfRange(b));
        }
        partition.validate_for(sys)?;

        let tj = sys.two_j() as i32;
        let diagonal: Vec<f64> = sys
            .twice_m_values()
            .map(|m| {
                let block = partition.block_of(m).expect("validated partition");
                let parity = if ((tj - m) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let offset = (m - block.twice_mu) as f64 / 2.0;
                let exponent = offset * offset;
                // 0^0 = 1: the σ → 0 limit of the Gaussian at its centre
                let weight = if exponent == 0.0 {
                    1.0
                } else {
                    b.powf(exponent)
                };
                parity * weight
            })
            .collect();

        let e_plus: Vec<f64> = diagonal.iter().map(|a| 0.5 * (1.0 + a)).collect();
        let e_minus: Vec<f64> = diagonal.iter().map(|a| 0.5 * (1.0 - a)).collect();
        Ok(Self {
            b,
            partition,
            observable: HermitianOperator::from_real_diagonal(&diagonal),
            e_plus: HermitianOperator::from_real_diagonal(&e_plus),
            e_minus: HermitianOperator::from_real_diagonal(&e_minus),
            diagonal,
        })
    }

    /// Measurement with the default two-block partition.
    pub fn with_default_partition(sys: &SpinSystem, b: f64) -> Result<Self> {
        Self::new(sys, b, PartitionSpec::default_for(sys)?)
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn partition(&self) -> &PartitionSpec {
        &self.partition
    }

    /// Diagonal of `A` in basis order.
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn observable(&self) -> &HermitianOperator {
        &self.observable
    }

    pub fn effect(&self, sign: Sign) -> &HermitianOperator {
        match sign {
            Sign::Plus => &self.e_plus,
            Sign::Minus => &self.e_minus,
        }
    }

    /// Diagonal of `E±`.
    pub fn effect_diagonal(&self, sign: Sign) -> Vec<f64> {
        let s = sign.value();
        self.diagonal.iter().map(|a| 0.5 * (1.0 + s * a)).collect()
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }
}

/// State left behind by the first (preparation) measurement.
#[derive(Debug, Clone)]
pub struct PreparedState {
    pub sign: Sign,
    pub rho: DensityMatrix,
    pub probability: f64,
}

/// Post-measurement state for one outcome, starting from `I/d`.
pub fn prepare(meas: &NoisyDichotomicMeasurement, sign: Sign) -> Result<PreparedState> {
    let d = meas.dim() as f64;
    let effect = meas.effect_diagonal(sign);
    // Tr(E ρ₀) with ρ₀ = I/d
    let probability = effect.iter().sum::<f64>() / d;
    if probability <= 0.0 {
        return Err(Error::DegeneratePreparation { sign: sign.as_i8() });
    }
    // E diagonal, so E^{1/2} ρ₀ E^{1/2} = E/d
    let diagonal: Vec<f64> = effect.iter().map(|e| e / (d * probability)).collect();
    let rho = DensityMatrix::new(HermitianOperator::from_real_diagonal(&diagonal).into_matrix())?;
    Ok(PreparedState {
        sign,
        rho,
        probability,
    })
}

/// Both preparation branches `(ρ₊, ρ₋)`.
pub fn prepare_states(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
) -> Result<(PreparedState, PreparedState)> {
    if meas.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            actual: meas.dim(),
        });
    }
    Ok((prepare(meas, Sign::Plus)?, prepare(meas, Sign::Minus)?))
}
