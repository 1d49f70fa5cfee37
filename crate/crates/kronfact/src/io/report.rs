//! JSON reports with a canonical encoding: sorted keys, shortest-roundtrip
//! reals, integers unquoted.

use serde::Serialize;

use crate::branch::{Branch, PrimeDecomposition};
use crate::error::{Error, Result};
use crate::factorize::Length2Factorization;
use crate::numtheory::compatible_pairs;
use crate::pattern::BinaryPattern;

/// Schema tag carried by every JSON document this crate writes.
pub const SCHEMA: &str = "kronfact/1";

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PairReport {
    pub n1: u64,
    pub n2: u64,
    pub left_nnz: usize,
    pub right_nnz: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FactorReport {
    pub size: u64,
    pub entries: Vec<(u64, u64)>,
}

impl FactorReport {
    fn from_pattern(p: &BinaryPattern) -> Self {
        FactorReport {
            size: p.size(),
            entries: p.coordinates().map(|c| (c.row, c.col)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BranchReport {
    pub chain: Vec<u64>,
    pub weights: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DecompositionReport {
    pub sizes: Vec<u64>,
    pub factors: Vec<FactorReport>,
}

/// Full factorization report for one input pattern.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FactorizationReport {
    pub schema: String,
    pub size: u64,
    pub nnz: usize,
    /// Compatible pairs that were attempted.
    pub pairs_tested: Vec<(u64, u64)>,
    /// Successful length-2 factorizations with factor entry counts.
    pub factorizations: Vec<PairReport>,
    pub branches: Vec<BranchReport>,
    pub decompositions: Vec<DecompositionReport>,
    pub prime: bool,
    pub maximal: bool,
    /// Set when the pair sweep was restricted by the caller.
    pub restricted_pairs: Option<Vec<(u64, u64)>>,
    /// False in restricted mode: factors of the reported decompositions may
    /// then still be decomposable.
    pub primality_guaranteed: bool,
}

impl FactorizationReport {
    /// Assembles the report. `restricted_pairs` is the explicit pair list
    /// when the caller limited the sweep; `None` means the full compatible
    /// set was tested.
    pub fn build(
        pattern: &BinaryPattern,
        factorizations: &[Length2Factorization],
        branches: &[Branch],
        decompositions: &[PrimeDecomposition],
        restricted_pairs: Option<Vec<(u64, u64)>>,
    ) -> Self {
        let all_pairs = compatible_pairs(pattern.size());
        let pairs_tested = restricted_pairs
            .clone()
            .unwrap_or_else(|| all_pairs.pairs().to_vec());
        let restricted = restricted_pairs.is_some();
        let prime = factorizations.is_empty();
        let maximal =
            !restricted && !all_pairs.is_empty() && factorizations.len() == all_pairs.len();
        FactorizationReport {
            schema: SCHEMA.to_string(),
            size: pattern.size(),
            nnz: pattern.nnz(),
            pairs_tested,
            factorizations: factorizations
                .iter()
                .map(|f| PairReport {
                    n1: f.pair().0,
                    n2: f.pair().1,
                    left_nnz: f.left().nnz(),
                    right_nnz: f.right().nnz(),
                })
                .collect(),
            branches: branches
                .iter()
                .map(|b| BranchReport {
                    chain: b.chain().to_vec(),
                    weights: b.weights().to_vec(),
                })
                .collect(),
            decompositions: decompositions
                .iter()
                .map(|d| DecompositionReport {
                    sizes: d.sizes().to_vec(),
                    factors: d.factors().iter().map(FactorReport::from_pattern).collect(),
                })
                .collect(),
            prime,
            maximal,
            restricted_pairs,
            primality_guaranteed: !restricted,
        }
    }
}

/// Report for a nearest-Kronecker-product run.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct NkpReport {
    pub schema: String,
    pub kind: String,
    pub sizes: Vec<u64>,
    pub sigma: f64,
    pub frobenius_error: f64,
    pub relative_error: f64,
    /// Multi-factor approximations use a greedy left-to-right rank-1
    /// recursion; recorded here because other generalizations exist.
    pub method: String,
    pub factor_files: Vec<String>,
}

impl NkpReport {
    pub fn new(
        sizes: Vec<u64>,
        sigma: f64,
        frobenius_error: f64,
        relative_error: f64,
        factor_files: Vec<String>,
    ) -> Self {
        NkpReport {
            schema: SCHEMA.to_string(),
            kind: "nkp".to_string(),
            sizes,
            sigma,
            frobenius_error,
            relative_error,
            method: "greedy_rank1".to_string(),
            factor_files,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PositionReport {
    pub vertex: u64,
    pub index: Vec<u64>,
    pub x: f64,
    pub y: f64,
}

/// Vertex coordinates of a layout run, ordered by vertex row index.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LayoutReport {
    pub schema: String,
    pub kind: String,
    pub sizes: Vec<u64>,
    pub positions: Vec<PositionReport>,
}

impl LayoutReport {
    pub fn new(sizes: Vec<u64>, positions: Vec<PositionReport>) -> Self {
        LayoutReport {
            schema: SCHEMA.to_string(),
            kind: "layout".to_string(),
            sizes,
            positions,
        }
    }
}

/// Canonical JSON: keys sorted (serde_json maps are BTree-backed), pretty
/// printed, terminated by a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value)
        .map_err(|e| Error::domain(format!("cannot serialize report: {e}")))?;
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::domain(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{build_branches, decompositions_from};
    use crate::factorize::all_length2;

    fn report_for(a: &BinaryPattern) -> FactorizationReport {
        let f = all_length2(a).unwrap();
        let branches = build_branches(&f, a.size());
        let decomps = decompositions_from(a, &f).unwrap();
        FactorizationReport::build(a, &f, &branches, &decomps, None)
    }

    #[test]
    fn report_for_prime_pattern() {
        let a = BinaryPattern::from_coordinates(4, [(1, 1), (2, 2), (3, 3)]).unwrap();
        let report = report_for(&a);
        assert!(report.prime);
        assert!(!report.maximal);
        assert!(report.decompositions.is_empty());
        let json = to_canonical_json(&report).unwrap();
        assert!(json.contains("\"prime\": true"));
    }

    #[test]
    fn report_for_maximal_pattern() {
        let x2 = BinaryPattern::from_coordinates(2, [(1, 1), (1, 2)]).unwrap();
        let x3 =
            BinaryPattern::from_coordinates(3, [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2), (3, 3)])
                .unwrap();
        let a = x2.kron(&x2).kron(&x3);
        let report = report_for(&a);
        assert!(report.maximal);
        assert_eq!(report.decompositions.len(), 3);
        assert!(report.primality_guaranteed);
    }

    #[test]
    fn canonical_json_sorts_keys_and_is_stable() {
        let identity = report_for(&BinaryPattern::identity(12).unwrap());
        let a = to_canonical_json(&identity).unwrap();
        let b = to_canonical_json(&identity).unwrap();
        assert_eq!(a, b);

        // Top-level keys come out sorted; a prime pattern has no nested
        // factor objects that would shadow the first occurrences.
        let prime = report_for(&BinaryPattern::ones(5).unwrap());
        let json = to_canonical_json(&prime).unwrap();
        let keys = [
            "\"branches\"",
            "\"nnz\"",
            "\"prime\"",
            "\"schema\"",
            "\"size\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
    }

    #[test]
    fn restricted_mode_voids_primality_guarantee() {
        let a = BinaryPattern::identity(12).unwrap();
        let f = vec![crate::factorize::try_factorize(&a, 2, 6).unwrap().unwrap()];
        let branches = build_branches(&f, 12);
        let decomps = decompositions_from(&a, &f).unwrap();
        let report = FactorizationReport::build(&a, &f, &branches, &decomps, Some(vec![(2, 6)]));
        assert!(!report.primality_guaranteed);
        assert_eq!(report.pairs_tested, vec![(2, 6)]);
        assert!(!report.maximal);
    }
}
