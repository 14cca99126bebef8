//! Machine-checkable record that `N(5)=6`.
//!
//! The record combines three things:
//!
//! 1. two exhaustive searches showing there is no linear `[7, 3]` MDS code
//!    over GF(5): one on the standard information set using minors, one over
//!    every information set using column independence;
//! 2. a verified AME(6, 5) witness built from the doubly extended
//!    Reed–Solomon code of length 6;
//! 3. an imported classification result extending the linear statement to
//!    arbitrary (nonlinear) codes over a 5-symbol alphabet.
//!
//! The signature is a SHA-256 digest of the compact JSON encoding with an
//! empty signature field; it detects edits, not authorship.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ame::{all_pass, state_from_code, verify_uniform_combinatorial, verify_uniform_dense, DENSE_TOLERANCE};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linear::extended_grs;
use crate::search::{search_systematic_mds, SearchOptions, SearchReport, SearchStatus};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CONCLUSION: &str = "N(5)=6";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImportedResult {
    pub citation: String,
    pub statement: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub construction: String,
    pub n: usize,
    pub d: u32,
    pub support_size: usize,
    pub min_distance: usize,
    pub combinatorial_pass: bool,
    pub dense_pass: bool,
}

impl WitnessRecord {
    pub fn passed(&self) -> bool {
        self.combinatorial_pass && self.dense_pass && self.support_size == 125 && self.min_distance == 4
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub toolkit_version: String,
    pub searches: Vec<SearchReport>,
    pub witness: WitnessRecord,
    pub imported_theorems: Vec<ImportedResult>,
    pub status: CertificateStatus,
    pub conclusion: Option<String>,
    pub signature: String,
}

fn imported_result() -> ImportedResult {
    ImportedResult {
        citation: "J. I. Kokkala, D. S. Krotov, P. R. J. Östergård, \
                   \"On the classification of MDS codes\", \
                   IEEE Transactions on Information Theory 61(12), 2015"
            .into(),
        statement: "Over an alphabet of size 5, every MDS code with 5^k codewords, \
                    k >= 3 and minimum distance >= 3 can be mapped to a linear code \
                    by permuting coordinates and permuting symbols within each coordinate. \
                    Such maps preserve distances, so nonexistence of a linear [7,3] MDS code \
                    over GF(5) rules out every MDS code of length 7 with 125 words."
            .into(),
    }
}

fn witness() -> Result<WitnessRecord> {
    let field = FiniteField::new(5)?;
    let code = extended_grs(&field, 3)?.codewords()?;
    let state = state_from_code(&code)?;
    Ok(WitnessRecord {
        construction: "uniform superposition over the doubly extended Reed-Solomon [6,3] code over GF(5)"
            .into(),
        n: state.n(),
        d: state.d(),
        support_size: state.support_size(),
        min_distance: code.min_distance()?,
        combinatorial_pass: all_pass(&verify_uniform_combinatorial(&state)?),
        dense_pass: all_pass(&verify_uniform_dense(&state, DENSE_TOLERANCE)?),
    })
}

fn digest(cert: &Certificate) -> String {
    let mut unsigned = cert.clone();
    unsigned.signature.clear();
    let bytes = serde_json::to_vec(&unsigned).expect("certificate serializes");
    format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
}

/// Runs both searches and assembles a signed certificate. When either
/// search exhausts `budget` the certificate is `incomplete` and carries no
/// conclusion.
pub fn nonexistence_certificate(budget: u64, workers: usize) -> Result<Certificate> {
    let standard = SearchOptions {
        budget,
        workers,
        ..SearchOptions::default()
    };
    let first = search_systematic_mds(5, 7, 3, &standard)?;
    let remaining = budget.saturating_sub(first.candidates_examined);
    let every_set = SearchOptions {
        budget: remaining,
        all_information_sets: true,
        ..standard
    };
    let second = search_systematic_mds(5, 7, 3, &every_set)?;
    let searches = vec![first, second];
    let witness = witness()?;

    let complete = searches.iter().all(|s| s.status == SearchStatus::Complete);
    let none_found = searches.iter().all(|s| s.mds_found == 0);
    let status = if complete {
        CertificateStatus::Complete
    } else {
        CertificateStatus::Incomplete
    };
    let conclusion = (complete && none_found && witness.passed()).then(|| CONCLUSION.to_string());
    let mut cert = Certificate {
        toolkit_version: TOOLKIT_VERSION.into(),
        searches,
        witness,
        imported_theorems: vec![imported_result()],
        status,
        conclusion,
        signature: String::new(),
    };
    cert.signature = digest(&cert);
    Ok(cert)
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(input: &str) -> Result<Self> {
        serde_json::from_str(input).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    /// Checks the digest and the internal consistency of the claim.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::VerificationFailed(m.to_string()));
        if digest(self) != self.signature {
            return fail("signature does not match certificate contents");
        }
        if self.imported_theorems.is_empty() {
            return fail("the nonlinear-to-linear reduction is not cited");
        }
        if self.searches.iter().any(|s| s.mds_found > 0) {
            return fail("a search reports an MDS [7,3] code over GF(5)");
        }
        let complete = !self.searches.is_empty()
            && self.searches.iter().all(|s| s.status == SearchStatus::Complete);
        if complete != (self.status == CertificateStatus::Complete) {
            return fail("status disagrees with the recorded searches");
        }
        let expected = (complete && self.witness.passed()).then(|| CONCLUSION.to_string());
        if self.conclusion != expected {
            return fail("conclusion is not supported by the recorded evidence");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_certificate_validates() {
        let cert = nonexistence_certificate(crate::search::DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(cert.status, CertificateStatus::Complete);
        assert_eq!(cert.conclusion.as_deref(), Some(CONCLUSION));
        assert!(cert.witness.passed());
        assert_eq!(cert.searches[1].information_sets_searched, 35);
        cert.validate().unwrap();
        let round = Certificate::from_json(&cert.to_json()).unwrap();
        round.validate().unwrap();
    }

    #[test]
    fn truncated_certificate_has_no_conclusion() {
        let cert = nonexistence_certificate(1000, 1).unwrap();
        assert_eq!(cert.status, CertificateStatus::Incomplete);
        assert!(cert.conclusion.is_none());
        cert.validate().unwrap();
    }

    #[test]
    fn tampering_is_detected() {
        let cert = nonexistence_certificate(1000, 1).unwrap();
        let mut forged = cert.clone();
        forged.conclusion = Some(CONCLUSION.into());
        assert!(forged.validate().is_err());
        forged.signature = digest(&forged);
        assert!(forged.validate().is_err(), "resigned but inconsistent");

        let mut edited = cert;
        edited.searches[0].candidates_examined += 1;
        assert!(edited.validate().is_err());
    }
}
