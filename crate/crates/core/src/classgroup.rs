//! Class groups of cluster algebras with an acyclic seed.
//!
//! Two independent routes compute the rank. [`rank_by_formula`] counts
//! primes per partner set from column gcds and the roots of unity of `K`.
//! [`rank_by_snf`] enumerates the primes, builds the valuation matrix of
//! `x_1..x_n` and reads `Z^t / rows` off its Smith normal form.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{divisors, lcm, odd_part};
use crate::error::{ClusterError, Result};
use crate::factor::{exchange_polynomials, k_factors};
use crate::matrix::SeedMatrix;
use crate::partners::{partner_partition, prime_ledger, PartnerBlock};
use crate::ring::BaseRing;
use crate::snf::smith_normal_form;

/// Rank contribution `r_V` of one partner set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRank {
    pub members: Vec<usize>,
    pub r: u64,
}

/// Smith-normal-form evidence for the class-group presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfCertificate {
    pub invariant_factors: Vec<BigInt>,
    /// All invariant factors are 1 and there are exactly `n` of them.
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupReport {
    pub rank: u64,
    /// Number of height-1 primes containing an initial exchangeable variable.
    pub t: u64,
    pub n: usize,
    pub blocks: Vec<BlockRank>,
    /// Present when the rank was obtained from the relation matrix.
    pub snf: Option<SnfCertificate>,
}

fn require_acyclic(s: &SeedMatrix) -> Result<()> {
    if s.is_acyclic() {
        Ok(())
    } else {
        Err(ClusterError::NotAcyclic)
    }
}

fn pow2(k: usize) -> Result<u64> {
    if k >= 63 {
        Err(ClusterError::RankOverflow)
    } else {
        Ok(1u64 << k)
    }
}

fn block_rank(block: &PartnerBlock, ring: &BaseRing) -> Result<u64> {
    let size = block.members.len() as u64;
    if block.isolated {
        return Ok(pow2(block.members.len())? - 1 - size);
    }
    let e = block.two_valuation.expect("non-isolated blocks carry e(V)");
    let two_e1 = 2u64
        .checked_shl(e)
        .filter(|&x| x.trailing_zeros() == e + 1)
        .ok_or(ClusterError::RankOverflow)?;
    let odd_lcm = block
        .gcds
        .iter()
        .fold(1u64, |acc, &g| lcm(acc, odd_part(g)));
    let mut total: u64 = 0;
    for d in divisors(odd_lcm) {
        let count = block.gcds.iter().filter(|&&g| g % d == 0).count();
        let index = two_e1.checked_mul(d).ok_or(ClusterError::RankOverflow)?;
        let term = (pow2(count)? - 1)
            .checked_mul(ring.nu(index))
            .ok_or(ClusterError::RankOverflow)?;
        total = total.checked_add(term).ok_or(ClusterError::RankOverflow)?;
    }
    Ok(total - size)
}

/// Rank from column gcds, partner sets and `nu_K`.
pub fn rank_by_formula(s: &SeedMatrix, ring: &BaseRing) -> Result<ClassGroupReport> {
    require_acyclic(s)?;
    let partition = partner_partition(s, ring)?;
    let blocks = partition
        .blocks
        .iter()
        .map(|b| {
            Ok(BlockRank {
                members: b.members.clone(),
                r: block_rank(b, ring)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = blocks
        .iter()
        .try_fold(0u64, |acc, b| acc.checked_add(b.r))
        .ok_or(ClusterError::RankOverflow)?;
    Ok(ClassGroupReport {
        rank,
        t: rank + s.n() as u64,
        n: s.n(),
        blocks,
        snf: None,
    })
}

/// Rank from the Smith normal form of the prime valuation matrix.
pub fn rank_by_snf(s: &SeedMatrix, ring: &BaseRing) -> Result<ClassGroupReport> {
    let ledger = prime_ledger(s, ring)?;
    let n = s.n();
    let t = ledger.t();
    let smith = smith_normal_form(&ledger.relation_matrix());
    let free = smith.rank == n && smith.invariant_factors.iter().all(One::is_one);
    if !free {
        return Err(ClusterError::TorsionDetected {
            factors: smith.invariant_factors.iter().map(ToString::to_string).collect(),
        });
    }
    let blocks = ledger
        .partition
        .blocks
        .iter()
        .enumerate()
        .map(|(idx, b)| {
            let primes = ledger.primes.iter().filter(|p| p.block == idx).count();
            BlockRank {
                members: b.members.clone(),
                r: (primes - b.members.len()) as u64,
            }
        })
        .collect();
    Ok(ClassGroupReport {
        rank: smith.cokernel_free_rank(t) as u64,
        t: t as u64,
        n,
        blocks,
        snf: Some(SnfCertificate {
            invariant_factors: smith.invariant_factors,
            free,
        }),
    })
}

/// Both routes, cross-checked. Returns the relation-matrix report.
pub fn class_group(s: &SeedMatrix, ring: &BaseRing) -> Result<ClassGroupReport> {
    let formula = rank_by_formula(s, ring)?;
    let snf = rank_by_snf(s, ring)?;
    if formula.rank != snf.rank || formula.blocks != snf.blocks {
        return Err(ClusterError::RankMismatch {
            formula: formula.rank,
            snf: snf.rank,
        });
    }
    Ok(snf)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorialityWitness {
    /// Every exchange polynomial is prime and no two coincide.
    AllPrimeAndDistinct,
    /// `f_index` splits into `factors` irreducible factors over `K`.
    Reducible { index: usize, factors: usize },
    /// `f_i` and `f_j` share an irreducible factor.
    SharedFactor { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialityReport {
    pub factorial: bool,
    pub witness: FactorialityWitness,
    pub rank: u64,
}

/// Factoriality via prime, pairwise distinct exchange polynomials,
/// confirmed against the rank formula.
pub fn is_factorial(s: &SeedMatrix, ring: &BaseRing) -> Result<FactorialityReport> {
    let report = rank_by_formula(s, ring)?;
    let polys = exchange_polynomials(s, ring)?;
    let mut witness = FactorialityWitness::AllPrimeAndDistinct;
    for p in &polys {
        let count = k_factors(p, ring)?.len();
        if count != 1 {
            witness = FactorialityWitness::Reducible {
                index: p.owner,
                factors: count,
            };
            break;
        }
    }
    if witness == FactorialityWitness::AllPrimeAndDistinct {
        let partition = partner_partition(s, ring)?;
        if let Some(block) = partition.blocks.iter().find(|b| b.members.len() > 1) {
            witness = FactorialityWitness::SharedFactor {
                i: block.members[0],
                j: block.members[1],
            };
        }
    }
    let factorial = witness == FactorialityWitness::AllPrimeAndDistinct;
    if factorial != (report.rank == 0) {
        return Err(ClusterError::FactorialityMismatch {
            criterion: factorial,
            rank: report.rank,
        });
    }
    Ok(FactorialityReport {
        factorial,
        witness,
        rank: report.rank,
    })
}

/// `m = n` and the frozen rows form the identity.
pub fn has_principal_coefficients(s: &SeedMatrix) -> bool {
    let n = s.n();
    s.m() == n
        && (0..n).all(|k| {
            (0..n).all(|l| {
                let b = s.entry(n + k, l);
                if k == l {
                    b.is_one()
                } else {
                    *b == BigInt::ZERO
                }
            })
        })
}

/// Outcome of [`source_freezing_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreezingReport {
    /// Every non-invertible frozen row is entrywise non-positive: the
    /// algebra equals its upper cluster algebra and its class group is the
    /// one computed with all frozen variables inverted.
    Applies { class_group: ClassGroupReport },
    /// Some non-invertible frozen row has a positive entry; no class group
    /// is computed.
    Unavailable { row: usize, column: usize },
}

/// Reduction from non-invertible to invertible frozen variables for
/// source-freezing seeds.
pub fn source_freezing_reduction(
    s: &SeedMatrix,
    noninvertible: &[usize],
    ring: &BaseRing,
) -> Result<FreezingReport> {
    if let Some(&index) = noninvertible
        .iter()
        .find(|&&k| k < s.n() || k >= s.num_rows())
    {
        return Err(ClusterError::IndexNotFrozen { index });
    }
    require_acyclic(s)?;
    let mut rows: Vec<usize> = noninvertible.to_vec();
    rows.sort_unstable();
    rows.dedup();
    for row in rows {
        if let Some(column) = s.row(row).iter().position(|b| *b > BigInt::ZERO) {
            return Ok(FreezingReport::Unavailable { row, column });
        }
    }
    Ok(FreezingReport::Applies {
        class_group: class_group(s, ring)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(n: usize, m: usize, rows: &[Vec<i64>]) -> SeedMatrix {
        SeedMatrix::from_i64(n, m, rows).unwrap()
    }

    fn a3() -> SeedMatrix {
        seed(3, 0, &[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]])
    }

    #[test]
    fn a3_rank_one() {
        let formula = rank_by_formula(&a3(), &BaseRing::Rationals).unwrap();
        assert_eq!(formula.rank, 1);
        assert_eq!(formula.t, 4);
        let snf = rank_by_snf(&a3(), &BaseRing::Rationals).unwrap();
        assert_eq!(snf.rank, 1);
        let cert = snf.snf.unwrap();
        assert!(cert.free);
        assert_eq!(cert.invariant_factors, vec![BigInt::one(); 3]);
    }

    #[test]
    fn rank_two_family() {
        // B = [[0, n], [-1, 0]]: f_2 = 1 + x_1^n.
        for n in 1..=40i64 {
            let s = seed(2, 0, &[vec![0, n], vec![-1, 0]]);
            let c = odd_part(n as u64);
            let q = rank_by_formula(&s, &BaseRing::Rationals).unwrap().rank;
            let alg = rank_by_formula(&s, &BaseRing::AlgebraicallyClosed).unwrap().rank;
            assert_eq!(q, crate::arith::sigma0(c) - 1, "n = {n}");
            assert_eq!(alg, n as u64 - 1, "n = {n}");
            assert_eq!(rank_by_snf(&s, &BaseRing::AlgebraicallyClosed).unwrap().rank, alg);
        }
    }

    #[test]
    fn principal_coefficients() {
        assert!(has_principal_coefficients(&seed(
            2,
            2,
            &[vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 1]]
        )));
        assert!(!has_principal_coefficients(&a3()));
        assert!(!has_principal_coefficients(&seed(
            2,
            2,
            &[vec![0, 1], vec![-1, 0], vec![0, 1], vec![1, 0]]
        )));
        let ext = a3().with_principal_coefficients();
        assert!(has_principal_coefficients(&ext));
        assert!(is_factorial(&ext, &BaseRing::Integers).unwrap().factorial);
    }

    #[test]
    fn markov_principal_extension_is_not_acyclic() {
        let markov = seed(3, 0, &[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]);
        let ext = markov.with_principal_coefficients();
        assert!(has_principal_coefficients(&ext));
        assert_eq!(is_factorial(&ext, &BaseRing::Integers), Err(ClusterError::NotAcyclic));
    }

    #[test]
    fn factorial_witnesses() {
        let report = is_factorial(&a3(), &BaseRing::Rationals).unwrap();
        assert!(!report.factorial);
        assert_eq!(report.witness, FactorialityWitness::SharedFactor { i: 0, j: 2 });

        let kron = seed(2, 0, &[vec![0, 3], vec![-3, 0]]);
        let report = is_factorial(&kron, &BaseRing::Rationals).unwrap();
        assert_eq!(
            report.witness,
            FactorialityWitness::Reducible { index: 0, factors: 2 }
        );
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn source_freezing() {
        // A_2 with a frozen row under index 0.
        let base = seed(2, 1, &[vec![0, 1], vec![-1, 0], vec![-1, 0]]);
        let q = BaseRing::Rationals;
        match source_freezing_reduction(&base, &[2], &q).unwrap() {
            FreezingReport::Applies { class_group } => {
                assert_eq!(class_group.rank, class_group_of(&base, &q));
            }
            other => panic!("unexpected {other:?}"),
        }
        let positive = seed(2, 1, &[vec![0, 1], vec![-1, 0], vec![0, 1]]);
        assert_eq!(
            source_freezing_reduction(&positive, &[2], &q).unwrap(),
            FreezingReport::Unavailable { row: 2, column: 1 }
        );
        match source_freezing_reduction(&positive, &[], &q).unwrap() {
            FreezingReport::Applies { class_group } => {
                assert_eq!(class_group, super::class_group(&positive, &q).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            source_freezing_reduction(&positive, &[1], &q),
            Err(ClusterError::IndexNotFrozen { index: 1 })
        );
    }

    fn class_group_of(s: &SeedMatrix, ring: &BaseRing) -> u64 {
        class_group(s, ring).unwrap().rank
    }
}
