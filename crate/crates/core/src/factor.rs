//! Exchange polynomials and their irreducible factors.
//!
//! A non-constant exchange polynomial is `g^d + h^d` with coprime monomials
//! `g`, `h` and `d` the column gcd. Writing `d = 2^l c` with `c` odd, its
//! irreducible factors over `Z` are `Phi_{2^{l+1} e}(g, h)` for `e | c`, and
//! each of those splits over `K` into `nu_K(2^{l+1} e)` factors. Factors are
//! never expanded; a [`ZFactorLabel`] (normalized pair `(g, h)` plus the
//! cyclotomic index) identifies one up to associates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{divisors, odd_part, two_valuation};
use crate::error::{ClusterError, Result};
use crate::matrix::SeedMatrix;
use crate::ring::BaseRing;

/// gcd of the absolute entries of column `i`; 0 iff the column vanishes.
pub fn column_gcd(s: &SeedMatrix, i: usize) -> Result<u64> {
    s.check_exchangeable(i)?;
    let g = (0..s.num_rows()).fold(BigInt::zero(), |acc, k| acc.gcd(s.entry(k, i)));
    g.to_u64().ok_or(ClusterError::GcdTooLarge { index: i })
}

pub fn column_gcds(s: &SeedMatrix) -> Result<Vec<u64>> {
    (0..s.n()).map(|i| column_gcd(s, i)).collect()
}

/// Exchange polynomial `f_i = x^u + x^v` stored by its exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangePoly {
    pub owner: usize,
    /// `u_k = max(b_ki, 0)`.
    pub u: Vec<BigInt>,
    /// `v_k = max(-b_ki, 0)`.
    pub v: Vec<BigInt>,
    pub gcd: u64,
}

impl ExchangePoly {
    /// True for an isolated index over `Z`, where `f_i = 2`.
    pub fn is_constant_two(&self) -> bool {
        self.gcd == 0
    }
}

pub fn exchange_polynomial(s: &SeedMatrix, i: usize, ring: &BaseRing) -> Result<ExchangePoly> {
    let gcd = column_gcd(s, i)?;
    if gcd == 0 && ring.is_field() {
        return Err(ClusterError::IsolatedIndexOverField { index: i });
    }
    let (u, v) = (0..s.num_rows())
        .map(|k| {
            let b = s.entry(k, i);
            if b.is_positive() {
                (b.clone(), BigInt::zero())
            } else {
                (BigInt::zero(), -b)
            }
        })
        .unzip();
    Ok(ExchangePoly {
        owner: i,
        u,
        v,
        gcd,
    })
}

pub fn exchange_polynomials(s: &SeedMatrix, ring: &BaseRing) -> Result<Vec<ExchangePoly>> {
    (0..s.n()).map(|i| exchange_polynomial(s, i, ring)).collect()
}

/// An irreducible factor over `Z` of some exchange polynomial.
///
/// For ordinary factors `base_u`, `base_v` are the exponent vectors of
/// `g`, `h` (ordered so that `base_u <= base_v`) and `cyc` is the index of
/// the homogenized cyclotomic polynomial. Every such index is even, and
/// `Phi_cyc(g, h) = Phi_cyc(h, g)` for even `cyc`, so the ordering loses
/// nothing. The constant factor 2 over `Z` has `special_two` set, zero
/// bases and `cyc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZFactorLabel {
    pub base_u: Vec<BigInt>,
    pub base_v: Vec<BigInt>,
    pub cyc: u64,
    pub special_two: bool,
}

impl ZFactorLabel {
    fn two(len: usize) -> Self {
        ZFactorLabel {
            base_u: vec![BigInt::zero(); len],
            base_v: vec![BigInt::zero(); len],
            cyc: 1,
            special_two: true,
        }
    }

    /// Odd part `e` of the cyclotomic index.
    pub fn odd_index(&self) -> u64 {
        odd_part(self.cyc)
    }

    /// Whether this factor divides `p`.
    pub fn divides(&self, p: &ExchangePoly) -> bool {
        if p.is_constant_two() || self.special_two {
            return p.is_constant_two() && self.special_two;
        }
        let l = two_valuation(p.gcd);
        if self.cyc != 2 * (1u64 << l) * self.odd_index() || odd_part(p.gcd) % self.odd_index() != 0 {
            return false;
        }
        let (bu, bv) = normalized_base(p);
        bu == self.base_u && bv == self.base_v
    }
}

fn normalized_base(p: &ExchangePoly) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = BigInt::from(p.gcd);
    let bu: Vec<BigInt> = p.u.iter().map(|x| x / &d).collect();
    let bv: Vec<BigInt> = p.v.iter().map(|x| x / &d).collect();
    if bu <= bv {
        (bu, bv)
    } else {
        (bv, bu)
    }
}

/// Irreducible factors of `p` over `Z`, one per odd divisor of the column gcd.
pub fn z_factors(p: &ExchangePoly) -> Vec<ZFactorLabel> {
    if p.is_constant_two() {
        return vec![ZFactorLabel::two(p.u.len())];
    }
    let (base_u, base_v) = normalized_base(p);
    let two_l1 = 2u64 << two_valuation(p.gcd);
    divisors(odd_part(p.gcd))
        .into_iter()
        .map(|e| ZFactorLabel {
            base_u: base_u.clone(),
            base_v: base_v.clone(),
            cyc: two_l1 * e,
            special_two: false,
        })
        .collect()
}

/// One irreducible factor over `K`: a conjugate piece of a `Z`-factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KFactor {
    pub label: ZFactorLabel,
    /// 1-based, at most `nu_K(cyc)`.
    pub split: u64,
}

/// Expand a `Z`-factor into its `nu_K(cyc)` irreducible pieces over `K`.
pub fn split_label(label: &ZFactorLabel, ring: &BaseRing) -> Vec<KFactor> {
    let copies = if label.special_two { 1 } else { ring.nu(label.cyc) };
    (1..=copies)
        .map(|split| KFactor {
            label: label.clone(),
            split,
        })
        .collect()
}

pub fn k_factors(p: &ExchangePoly, ring: &BaseRing) -> Result<Vec<KFactor>> {
    if p.is_constant_two() && ring.is_field() {
        return Err(ClusterError::IsolatedIndexOverField { index: p.owner });
    }
    Ok(z_factors(p)
        .iter()
        .flat_map(|label| split_label(label, ring))
        .collect())
}

/// Common irreducible factors over `Z`, sorted.
pub fn common_factors(p: &ExchangePoly, q: &ExchangePoly) -> Vec<ZFactorLabel> {
    let theirs = z_factors(q);
    let mut shared: Vec<ZFactorLabel> = z_factors(p)
        .into_iter()
        .filter(|label| theirs.contains(label))
        .collect();
    shared.sort();
    shared
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BaseRing;

    fn seed(n: usize, m: usize, rows: &[Vec<i64>]) -> SeedMatrix {
        SeedMatrix::from_i64(n, m, rows).unwrap()
    }

    /// Single exchangeable vertex with one frozen row: `f = 1 + y^d`.
    fn power_plus_one(d: i64) -> ExchangePoly {
        let s = seed(1, 1, &[vec![0], vec![d]]);
        exchange_polynomial(&s, 0, &BaseRing::Rationals).unwrap()
    }

    fn cycs(labels: &[ZFactorLabel]) -> Vec<u64> {
        labels.iter().map(|l| l.cyc).collect()
    }

    #[test]
    fn kronecker_polynomial() {
        let s = seed(2, 0, &[vec![0, 5], vec![-5, 0]]);
        let f2 = exchange_polynomial(&s, 1, &BaseRing::Rationals).unwrap();
        assert_eq!(f2.u, vec![BigInt::from(5), BigInt::zero()]);
        assert_eq!(f2.v, vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(f2.gcd, 5);
    }

    #[test]
    fn constant_two() {
        let s = seed(2, 0, &[vec![0, 0], vec![0, 0]]);
        let p = exchange_polynomial(&s, 0, &BaseRing::Integers).unwrap();
        assert!(p.is_constant_two());
        let labels = z_factors(&p);
        assert_eq!(labels.len(), 1);
        assert!(labels[0].special_two);
        assert_eq!(
            exchange_polynomial(&s, 0, &BaseRing::AlgebraicallyClosed),
            Err(ClusterError::IsolatedIndexOverField { index: 0 })
        );
        assert_eq!(
            k_factors(&p, &BaseRing::Rationals),
            Err(ClusterError::IsolatedIndexOverField { index: 0 })
        );
        assert_eq!(k_factors(&p, &BaseRing::Integers).unwrap().len(), 1);
    }

    #[test]
    fn x6_plus_one() {
        assert_eq!(cycs(&z_factors(&power_plus_one(6))), vec![4, 12]);
        for l in 0..6 {
            assert_eq!(cycs(&z_factors(&power_plus_one(1 << l))), vec![2u64 << l]);
        }
    }

    #[test]
    fn sign_flip_invariance() {
        let a = power_plus_one(6);
        let b = power_plus_one(-6);
        assert_eq!(z_factors(&a), z_factors(&b));
    }

    #[test]
    fn k_factor_counts() {
        let alg = BaseRing::AlgebraicallyClosed;
        for n in 1..=24 {
            let p = power_plus_one(n);
            assert_eq!(k_factors(&p, &alg).unwrap().len() as i64, n);
        }
        // 1 + x^(2^l c) over Q has sigma_0(c) factors.
        assert_eq!(k_factors(&power_plus_one(12), &BaseRing::Rationals).unwrap().len(), 2);
        assert_eq!(k_factors(&power_plus_one(45), &BaseRing::Rationals).unwrap().len(), 6);
        let custom: BaseRing = "custom:4".parse().unwrap();
        assert_eq!(k_factors(&power_plus_one(2), &custom).unwrap().len(), 2);
    }

    #[test]
    fn common_of_self_is_everything() {
        let p = power_plus_one(30);
        assert_eq!(common_factors(&p, &p), {
            let mut all = z_factors(&p);
            all.sort();
            all
        });
    }

    #[test]
    fn divides_matches_membership() {
        let p6 = power_plus_one(6);
        let p2 = power_plus_one(2);
        for label in z_factors(&p6) {
            assert!(label.divides(&p6));
            assert_eq!(label.divides(&p2), label.cyc == 4);
        }
    }
}
