//! Partner sets and the symbolic height-1 primes over the initial
//! exchangeable variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::two_valuation;
use crate::error::{ClusterError, Result};
use crate::factor::{column_gcd, exchange_polynomials, split_label, z_factors, KFactor, ZFactorLabel};
use crate::matrix::SeedMatrix;
use crate::ring::BaseRing;
use crate::snf::IntMatrix;

/// Largest g-partner set for which all subsets are enumerated.
pub const PARTNER_ENUMERATION_LIMIT: usize = 20;

/// Two columns are partners iff both vanish, or their gcds share the
/// 2-valuation and the gcd-normalized columns agree up to sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum PartnerKey {
    Isolated,
    Column { two_valuation: u32, direction: Vec<BigInt> },
}

fn partner_key(s: &SeedMatrix, i: usize) -> Result<PartnerKey> {
    let gcd = column_gcd(s, i)?;
    if gcd == 0 {
        return Ok(PartnerKey::Isolated);
    }
    let d = BigInt::from(gcd);
    let mut direction: Vec<BigInt> = s.column(i).iter().map(|x| x / &d).collect();
    let leading_negative = direction
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    if leading_negative {
        direction.iter_mut().for_each(|x| *x = -&*x);
    }
    Ok(PartnerKey::Column {
        two_valuation: two_valuation(gcd),
        direction,
    })
}

fn reject_isolated_over_field(s: &SeedMatrix, ring: &BaseRing, indices: &[usize]) -> Result<()> {
    if ring.is_field() {
        if let Some(&index) = indices.iter().find(|&&i| s.is_isolated(i)) {
            return Err(ClusterError::IsolatedIndexOverField { index });
        }
    }
    Ok(())
}

pub fn partner_predicate(s: &SeedMatrix, i: usize, j: usize, ring: &BaseRing) -> Result<bool> {
    s.check_exchangeable(i)?;
    s.check_exchangeable(j)?;
    reject_isolated_over_field(s, ring, &[i, j])?;
    Ok(partner_key(s, i)? == partner_key(s, j)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerBlock {
    /// Sorted exchangeable indices.
    pub members: Vec<usize>,
    /// Block of isolated indices (only over `Z`).
    pub isolated: bool,
    /// Shared 2-valuation `e(V)` of the member column gcds.
    pub two_valuation: Option<u32>,
    /// Column gcd of each member, aligned with `members`.
    pub gcds: Vec<u64>,
}

/// Partition of the exchangeable indices into partner sets, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerPartition {
    pub blocks: Vec<PartnerBlock>,
}

impl PartnerPartition {
    pub fn isolated_block(&self) -> Option<&PartnerBlock> {
        self.blocks.iter().find(|b| b.isolated)
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.members.contains(&i))
    }
}

pub fn partner_partition(s: &SeedMatrix, ring: &BaseRing) -> Result<PartnerPartition> {
    let all: Vec<usize> = (0..s.n()).collect();
    reject_isolated_over_field(s, ring, &all)?;
    let mut groups: BTreeMap<PartnerKey, Vec<usize>> = BTreeMap::new();
    for i in 0..s.n() {
        groups.entry(partner_key(s, i)?).or_default().push(i);
    }
    let mut blocks = groups
        .into_iter()
        .map(|(key, members)| {
            let gcds = members
                .iter()
                .map(|&i| column_gcd(s, i))
                .collect::<Result<Vec<_>>>()?;
            Ok(match key {
                PartnerKey::Isolated => PartnerBlock {
                    members,
                    isolated: true,
                    two_valuation: None,
                    gcds,
                },
                PartnerKey::Column { two_valuation, .. } => PartnerBlock {
                    members,
                    isolated: false,
                    two_valuation: Some(two_valuation),
                    gcds,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    blocks.sort_by_key(|b| b.members[0]);
    Ok(PartnerPartition { blocks })
}

/// Indices whose exchange polynomial is divisible by `label`.
pub fn g_partners(s: &SeedMatrix, label: &ZFactorLabel, ring: &BaseRing) -> Result<Vec<usize>> {
    let polys = exchange_polynomials(s, ring)?;
    let members: Vec<usize> = polys
        .iter()
        .filter(|p| label.divides(p))
        .map(|p| p.owner)
        .collect();
    if members.is_empty() {
        Err(ClusterError::UnknownLabel)
    } else {
        Ok(members)
    }
}

/// The height-1 prime `A ∩ p A_I` for an irreducible factor `p` and a
/// nonempty set `I` of `p`-partners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPrime {
    pub factor: KFactor,
    /// Sorted, nonempty subset of the factor's partners.
    pub subset: Vec<usize>,
    /// Index of the owning partner block.
    pub block: usize,
}

/// All height-1 primes containing some initial exchangeable variable,
/// with the valuations of `x_1..x_n` at each of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLedger {
    pub n: usize,
    pub partition: PartnerPartition,
    pub primes: Vec<SymbolicPrime>,
    /// `relations[i][c] = 1` iff `x_i` lies in prime `c`.
    pub relations: Vec<Vec<u8>>,
}

impl PrimeLedger {
    pub fn t(&self) -> usize {
        self.primes.len()
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.relations
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            self.primes.len(),
        )
    }
}

/// Enumerate the primes `(p, I)` over the initial exchangeable variables.
///
/// Columns are ordered by owning block, then cyclotomic index, then split
/// index; subsets of a factor's sorted partner list follow increasing bitmask.
pub fn prime_ledger(s: &SeedMatrix, ring: &BaseRing) -> Result<PrimeLedger> {
    if !s.is_acyclic() {
        return Err(ClusterError::NotAcyclic);
    }
    let partition = partner_partition(s, ring)?;
    let polys = exchange_polynomials(s, ring)?;
    let factors: Vec<Vec<ZFactorLabel>> = polys.iter().map(z_factors).collect();

    let mut primes = Vec::new();
    for (block_idx, block) in partition.blocks.iter().enumerate() {
        let mut labels: Vec<&ZFactorLabel> = block
            .members
            .iter()
            .flat_map(|&i| factors[i].iter())
            .collect();
        labels.sort_by_key(|l| l.cyc);
        labels.dedup();
        for label in labels {
            let ptns: Vec<usize> = block
                .members
                .iter()
                .copied()
                .filter(|&i| factors[i].contains(label))
                .collect();
            if ptns.len() > PARTNER_ENUMERATION_LIMIT {
                return Err(ClusterError::PartnerSetTooLarge {
                    size: ptns.len(),
                    limit: PARTNER_ENUMERATION_LIMIT,
                });
            }
            for factor in split_label(label, ring) {
                for mask in 1u32..(1u32 << ptns.len()) {
                    let subset = ptns
                        .iter()
                        .enumerate()
                        .filter(|(bit, _)| mask & (1 << bit) != 0)
                        .map(|(_, &i)| i)
                        .collect();
                    primes.push(SymbolicPrime {
                        factor: factor.clone(),
                        subset,
                        block: block_idx,
                    });
                }
            }
        }
    }

    let n = s.n();
    let mut relations = vec![vec![0u8; primes.len()]; n];
    for (c, prime) in primes.iter().enumerate() {
        for &i in &prime.subset {
            relations[i][c] = 1;
        }
    }
    Ok(PrimeLedger {
        n,
        partition,
        primes,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{common_factors, exchange_polynomial};

    fn seed(n: usize, m: usize, rows: &[Vec<i64>]) -> SeedMatrix {
        SeedMatrix::from_i64(n, m, rows).unwrap()
    }

    fn a3() -> SeedMatrix {
        seed(3, 0, &[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]])
    }

    #[test]
    fn a3_ledger() {
        let ledger = prime_ledger(&a3(), &BaseRing::Rationals).unwrap();
        let subsets: Vec<Vec<usize>> = ledger.primes.iter().map(|p| p.subset.clone()).collect();
        assert_eq!(subsets, vec![vec![0], vec![2], vec![0, 2], vec![1]]);
        assert_eq!(
            ledger.relations,
            vec![vec![1, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 1, 1, 0]]
        );
    }

    #[test]
    fn a2_ledger() {
        let s = seed(2, 0, &[vec![0, 1], vec![-1, 0]]);
        let ledger = prime_ledger(&s, &BaseRing::Rationals).unwrap();
        assert_eq!(ledger.t(), 2);
    }

    #[test]
    fn markov_is_refused() {
        let s = seed(3, 0, &[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]);
        assert_eq!(prime_ledger(&s, &BaseRing::Integers), Err(ClusterError::NotAcyclic));
    }

    #[test]
    fn reflexive_and_kronecker() {
        let s = seed(2, 0, &[vec![0, 3], vec![-3, 0]]);
        let q = BaseRing::Rationals;
        assert!(partner_predicate(&s, 0, 0, &q).unwrap());
        assert!(!partner_predicate(&s, 0, 1, &q).unwrap());
        let f1 = exchange_polynomial(&s, 0, &q).unwrap();
        let f2 = exchange_polynomial(&s, 1, &q).unwrap();
        assert!(common_factors(&f1, &f2).is_empty());
    }

    #[test]
    fn isolated_over_field_is_rejected() {
        let s = seed(2, 0, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(
            partner_predicate(&s, 0, 1, &BaseRing::Rationals),
            Err(ClusterError::IsolatedIndexOverField { index: 0 })
        );
        assert!(partner_predicate(&s, 0, 1, &BaseRing::Integers).unwrap());
        let partition = partner_partition(&s, &BaseRing::Integers).unwrap();
        assert_eq!(partition.blocks.len(), 1);
        assert!(partition.isolated_block().is_some());
    }

    #[test]
    fn b3_blocks() {
        let s = seed(3, 0, &[vec![0, 2, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        let p = partner_partition(&s, &BaseRing::Rationals).unwrap();
        let members: Vec<Vec<usize>> = p.blocks.iter().map(|b| b.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 2], vec![1]]);
        assert_eq!(p.block_of(2), Some(0));
    }
}
