//! JSON interchange: seeds as `{"n": .., "m": .., "b": [[..], ..]}` with
//! arbitrary-precision integer entries, plus report encoders.
//!
//! Index-valued fields in reports (members, subsets, witnesses) are 1-based.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::classgroup::{ClassGroupReport, FactorialityReport, FactorialityWitness};
use crate::error::{ClusterError, Result};
use crate::factor::{KFactor, ZFactorLabel};
use crate::matrix::SeedMatrix;
use crate::partners::{PartnerPartition, PrimeLedger};

pub fn bigint_to_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

fn malformed(msg: impl Into<String>) -> ClusterError {
    ClusterError::MalformedSeed(msg.into())
}

fn value_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(num) => BigInt::from_str(&num.to_string())
            .map_err(|_| malformed(format!("entry {num} is not an integer"))),
        other => Err(malformed(format!("entry {other} is not an integer"))),
    }
}

fn value_to_count(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(|v| v.as_u64())
        .map(|x| x as usize)
        .ok_or_else(|| malformed(format!("missing or invalid \"{key}\"")))
}

pub fn seed_from_value(v: &Value) -> Result<SeedMatrix> {
    let obj = v.as_object().ok_or_else(|| malformed("seed must be a JSON object"))?;
    let n = value_to_count(obj, "n")?;
    let m = value_to_count(obj, "m")?;
    let rows = obj
        .get("b")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing or invalid \"b\""))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| malformed("rows of \"b\" must be arrays"))?
                .iter()
                .map(value_to_bigint)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SeedMatrix::new(n, m, rows)
}

pub fn parse_seed(text: &str) -> Result<SeedMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    seed_from_value(&v)
}

pub fn matrix_value(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

pub fn seed_to_value(s: &SeedMatrix) -> Value {
    json!({"n": s.n(), "m": s.m(), "b": matrix_value(&s.rows())})
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn vector_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_to_value).collect())
}

pub fn label_value(label: &ZFactorLabel) -> Value {
    json!({
        "base_u": vector_value(&label.base_u),
        "base_v": vector_value(&label.base_v),
        "cyc": label.cyc,
        "special_two": label.special_two,
    })
}

pub fn k_factor_value(f: &KFactor) -> Value {
    let mut v = label_value(&f.label);
    v["split"] = json!(f.split);
    v
}

pub fn partition_value(p: &PartnerPartition) -> Value {
    Value::Array(
        p.blocks
            .iter()
            .map(|b| {
                json!({
                    "members": one_based(&b.members),
                    "isolated": b.isolated,
                    "two_valuation": b.two_valuation,
                    "gcds": b.gcds,
                })
            })
            .collect(),
    )
}

pub fn ledger_value(ledger: &PrimeLedger) -> Value {
    let primes: Vec<Value> = ledger
        .primes
        .iter()
        .map(|p| {
            json!({
                "factor": k_factor_value(&p.factor),
                "subset": one_based(&p.subset),
                "block": p.block + 1,
            })
        })
        .collect();
    json!({
        "n": ledger.n,
        "t": ledger.t(),
        "primes": primes,
        "relations": ledger.relations,
    })
}

pub fn class_group_value(report: &ClassGroupReport, factorial: Option<bool>) -> Value {
    let blocks: Vec<Value> = report
        .blocks
        .iter()
        .map(|b| json!({"members": one_based(&b.members), "r": b.r}))
        .collect();
    let mut v = json!({
        "rank": report.rank,
        "t": report.t,
        "n": report.n,
        "blocks": blocks,
        "factorial": factorial.unwrap_or(report.rank == 0),
    });
    if let Some(cert) = &report.snf {
        v["invariant_factors"] = vector_value(&cert.invariant_factors);
        v["free"] = json!(cert.free);
    }
    v
}

pub fn factoriality_value(report: &FactorialityReport) -> Value {
    json!({
        "factorial": report.factorial,
        "rank": report.rank,
        "witness": witness_value(&report.witness),
    })
}

pub fn witness_value(w: &FactorialityWitness) -> Value {
    match *w {
        FactorialityWitness::AllPrimeAndDistinct => json!({"kind": "all_prime_and_distinct"}),
        FactorialityWitness::Reducible { index, factors } => {
            json!({"kind": "reducible", "index": index + 1, "factors": factors})
        }
        FactorialityWitness::SharedFactor { i, j } => {
            json!({"kind": "shared_factor", "i": i + 1, "j": j + 1})
        }
    }
}
