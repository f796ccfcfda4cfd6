//! Pass/fail records shared by verification reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { id: id.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Verified,
    Violated,
    OutOfScope,
}

/// Outcome for one registered mathematical claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim_id: String,
    pub status: ClaimStatus,
    pub notes: String,
    /// Present whenever the status is `Violated`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// Violations of claims registered as known discrepancies do not fail a run.
    #[serde(default)]
    pub known_discrepancy: bool,
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub known_discrepancy: bool,
}

/// Every claim a report may refer to.
pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo {
        id: "primitive-structure",
        statement: "a primitive A_q A_r subgroup of S_n has degree q, r or q^ord_r(q) and order n or n*r",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "primitive-single-class",
        statement: "primitive A_q A_r subgroups of S_n of a given order form at most one conjugacy class",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "prime-degree-abelian",
        statement: "S_n has a primitive A_r subgroup only for n = r, and then a single class",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "maximal-abelian-single-class",
        statement: "maximal A_r subgroups of GL(alpha, s) form at most one conjugacy class",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "maximal-abelian-nonexistence",
        statement: "GL(alpha, s) has no nontrivial A_r subgroup when ord_r(s) does not divide alpha",
        known_discrepancy: true,
    },
    ClaimInfo {
        id: "variety-count-bound",
        statement: "the number of groups of order p^a q^b r^c in A_p A_q A_r is at most the variety count bound",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "linear-order-bound",
        statement: "an A_q A_r subgroup of GL(alpha, s) has order at most sqrt(6)^(alpha-1) min(qr, s)^alpha",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "linear-primitive-order",
        statement: "a primitive A_q A_r subgroup of GL(alpha, s) has |G| <= c|F(G)|, c = ord_|F(G)|(s) dividing alpha",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "permutation-order-bound",
        statement: "a soluble A-subgroup of S_n has order at most sqrt(6)^(n-1)",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "transitive-count-bound",
        statement: "the number of transitive A_q A_r subgroups of S_n is at most 6^(n(n-1)/4) n^(n+2)",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "gl-subgroup-count-bound",
        statement: "the number of classes of A_q A_r subgroups of GL(alpha, s) is at most the GL count bound",
        known_discrepancy: false,
    },
    ClaimInfo {
        id: "constant-dependent-bounds",
        statement: "bounds with non-explicit constants b and c",
        known_discrepancy: false,
    },
];

pub fn claim_info(id: &str) -> Option<&'static ClaimInfo> {
    CLAIMS.iter().find(|c| c.id == id)
}

impl Claim {
    /// Panics on an id missing from [`CLAIMS`].
    pub fn new(claim_id: &str, status: ClaimStatus, notes: impl Into<String>, witness: Option<String>) -> Self {
        let info = claim_info(claim_id).unwrap_or_else(|| panic!("unregistered claim {claim_id}"));
        Claim {
            claim_id: claim_id.to_string(),
            status,
            notes: notes.into(),
            witness,
            known_discrepancy: info.known_discrepancy,
        }
    }

    pub fn verified(claim_id: &str, notes: impl Into<String>) -> Self {
        Claim::new(claim_id, ClaimStatus::Verified, notes, None)
    }

    pub fn violated(claim_id: &str, notes: impl Into<String>, witness: impl Into<String>) -> Self {
        Claim::new(claim_id, ClaimStatus::Violated, notes, Some(witness.into()))
    }

    /// A violation that should fail the run.
    pub fn is_failure(&self) -> bool {
        self.status == ClaimStatus::Violated && !self.known_discrepancy
    }
}
