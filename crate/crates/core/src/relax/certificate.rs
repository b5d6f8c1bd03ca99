//! Decoding and independent re-verification of relaxation certificates.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::block::BlockFlows;
use super::model::{RelaxationModel, RelaxationSolution};
use crate::error::{Error, Result};
use crate::extension::Selector;
use crate::mincut::minimize_nns;
use crate::poly::{decompose, within, Polynomial, SignedSupport};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateBlock {
    pub theta: SignedSupport,
    pub poly: Polynomial,
    pub selectors: Vec<Selector>,
    /// Flow values per selector; empty for cutting-plane solutions, whose
    /// blocks are certified by min cut alone.
    pub flows: Vec<BlockFlows>,
}

/// `f - λ = g + Σ_k f^k` with `g` coefficientwise non-negative and every
/// `f^k` binary non-negative by its flow certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxationCertificate {
    pub lambda: Rational,
    pub g: Polynomial,
    pub blocks: Vec<CertificateBlock>,
}

pub fn extract_certificate(
    rm: &RelaxationModel,
    sol: &RelaxationSolution,
) -> Result<RelaxationCertificate> {
    let values = &sol.solution.values;
    if !sol.solution.is_optimal() || values.is_empty() {
        return Err(Error::Unsolved("not solved to optimality"));
    }
    let n = rm.f.n_vars();
    let lambda = values[rm.lambda.0].clone();
    let g = rm.g_polynomial(values);
    // cutting-plane solutions index the master, which has no flow variables
    let has_flows = values.len() >= rm.model.num_vars();
    let mut blocks = Vec::with_capacity(rm.blocks.len());
    for (k, b) in rm.blocks.iter().enumerate() {
        blocks.push(CertificateBlock {
            theta: rm.theta(k),
            poly: b.polynomial(n, values),
            selectors: b.selectors.clone(),
            flows: if has_flows {
                b.flows.iter().map(|nb| nb.flows(values)).collect()
            } else {
                Vec::new()
            },
        });
    }
    let cert = RelaxationCertificate { lambda, g, blocks };
    cert.recheck(&rm.f)?;
    Ok(cert)
}

impl RelaxationCertificate {
    /// Checks the decomposition identity, the sign patterns, and each
    /// overestimator's non-negativity by min cut.
    pub fn recheck(&self, f: &Polynomial) -> Result<()> {
        let mut sum = self.g.clone();
        for b in &self.blocks {
            sum = sum.add(&b.poly);
        }
        let shifted = f.sub(&Polynomial::constant(f.n_vars(), self.lambda.clone()));
        if sum != shifted {
            return Err(Error::CertificateRecheck(format!(
                "decomposition sums to {sum}, expected {shifted}"
            )));
        }
        if let Some((a, c)) = self.g.terms().find(|(_, c)| c.is_negative()) {
            return Err(Error::CertificateRecheck(format!(
                "remainder coefficient {c} on {a} is negative"
            )));
        }
        for (k, b) in self.blocks.iter().enumerate() {
            if !within(&b.poly, &b.theta) {
                return Err(Error::CertificateRecheck(format!(
                    "certificate {k} leaves its signed support"
                )));
            }
            let (nn, ps) = decompose(&b.poly);
            for sel in &b.selectors {
                let h = nn.add(&sel.apply(&ps)?);
                let (_, v) = minimize_nns(&h)?;
                if v < Rational::zero() {
                    return Err(Error::CertificateRecheck(format!(
                        "certificate {k} overestimator has minimum {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Block<'a> {
            theta: BTreeMap<String, i8>,
            poly: BTreeMap<String, String>,
            selectors: &'a [Selector],
            flows: &'a [BlockFlows],
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            lambda: String,
            g: BTreeMap<String, String>,
            blocks: Vec<Block<'a>>,
        }
        let terms = |p: &Polynomial| {
            p.terms()
                .map(|(a, c)| (a.key(), rational::format(c)))
                .collect::<BTreeMap<_, _>>()
        };
        let doc = Doc {
            lambda: rational::format(&self.lambda),
            g: terms(&self.g),
            blocks: self
                .blocks
                .iter()
                .map(|b| Block {
                    theta: b.theta.iter().map(|(a, s)| (a.key(), s.value())).collect(),
                    poly: terms(&b.poly),
                    selectors: &b.selectors,
                    flows: &b.flows,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}
