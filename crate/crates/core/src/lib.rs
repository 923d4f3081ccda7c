//! Exact computation of partner sets, height-1 primes and divisor class
//! groups for cluster algebras given by an acyclic seed.
//!
//! Indices throughout the library are 0-based.

pub mod arith;
pub mod catalog;
pub mod classgroup;
pub mod error;
pub mod factor;
pub mod io;
pub mod matrix;
pub mod partners;
pub mod ring;
pub mod snf;

pub use catalog::Family;
pub use classgroup::{
    class_group, has_principal_coefficients, is_factorial, rank_by_formula, rank_by_snf,
    source_freezing_reduction, ClassGroupReport, FactorialityReport, FactorialityWitness,
    FreezingReport,
};
pub use error::{ClusterError, Result};
pub use factor::{
    column_gcd, common_factors, exchange_polynomial, k_factors, z_factors, ExchangePoly, KFactor,
    ZFactorLabel,
};
pub use matrix::{
    build_quiver, canonical_form, is_acyclic, mutation_class, normalize_isolated, validate,
    CanonicalSeed, IceQuiver, MutationClass, SeedMatrix,
};
pub use partners::{g_partners, partner_partition, partner_predicate, prime_ledger, PrimeLedger};
pub use ring::BaseRing;
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
