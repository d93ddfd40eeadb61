//! One-field reports: invariants plus every certificate whose hypotheses hold.

use serde::Serialize;

use crate::abgroup::FiniteAbelianGroup;
use crate::certificate::{Certificate, Criterion, Verdict};
use crate::cyclo::{FieldShape, ParsedField, PrimeRamification};
use crate::error::{Error, Result};
use crate::quadratic::{
    c2_bound_check, hcf_abelian_quadratic, polya_order_quadratic, QuadraticFieldData,
};
use crate::theorems::{
    c1_decision_cyclic, certify_nonabelian, chabert_polya_cyclic, cor32_check,
    prime_degree_class_group_predict, t_bound, verify_main_bound, TBoundBreakdown,
};

pub const REPORT_SCHEMA: &str = "abelian-cft/field-report/v1";

/// Class group data supplied from outside; quadratic fields compute their own.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FieldOptions {
    pub h: Option<u64>,
    pub class_group: Option<FiniteAbelianGroup>,
    /// `Some(true)` when every unit has norm `+1`.
    pub unit_norm_plus: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscriminantReport {
    pub value: String,
    pub factors: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldReport {
    pub schema: &'static str,
    pub input: String,
    pub shape: FieldShape,
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub degree: u64,
    pub is_real: bool,
    pub conductor: u64,
    pub discriminant: DiscriminantReport,
    pub galois_group: Vec<u64>,
    pub is_cyclic: bool,
    pub ramification: Vec<PrimeRamification>,
    pub t_bound: TBoundBreakdown,
    pub h: Option<u64>,
    pub class_group: Option<Vec<u64>>,
    pub genus_degree: Option<u64>,
    pub polya_order: Option<u64>,
    pub quadratic: Option<QuadraticFieldData>,
    pub predicted_class_group: Option<Vec<u64>>,
    pub certificates: Vec<Certificate>,
}

impl FieldReport {
    /// The first abelian or non-abelian verdict among the certificates.
    pub fn decision(&self) -> Option<&Certificate> {
        self.certificates
            .iter()
            .find(|c| matches!(c.verdict, Verdict::Abelian | Verdict::NonAbelian))
    }
}

pub fn field_report(input: &str, parsed: &ParsedField, opts: &FieldOptions) -> Result<FieldReport> {
    let k = &parsed.field;
    let quadratic = match parsed.shape {
        FieldShape::Quadratic { d } => Some(QuadraticFieldData::compute(d)?),
        _ => None,
    };
    let h = resolve_h(quadratic.as_ref(), opts)?;
    let n = k.degree();
    let conductor = k.conductor()?;
    let profile = k.ramification_profile()?;
    let disc = k.discriminant()?;
    let disc_value = disc.value();
    let tb = t_bound(conductor)?;
    let is_cyclic = k.is_cyclic();
    let mut certificates = Vec::new();

    if let Some(q) = &quadratic {
        certificates.push(hcf_abelian_quadratic(q));
        certificates.push(c2_bound_check(q, conductor)?);
    } else {
        match cor32_check(k, h) {
            Ok(cert) => certificates.push(cert),
            Err(Error::ShapeNotRecognized(_)) => {}
            Err(e) => return Err(e),
        }
        if is_cyclic && (n % 2 == 1 || !k.is_real()) {
            if let Some(h) = h {
                certificates.push(c1_decision_cyclic(k, h)?);
            }
        }
    }
    if let Some(cl) = &opts.class_group {
        certificates.push(certify_nonabelian(n, cl, None));
    }
    if let Some(h) = h {
        certificates.push(t_divisibility(h, &tb));
        certificates.push(verify_main_bound(h, &disc_value, n));
    }

    let polya_order = match &quadratic {
        Some(q) => Some(polya_order_quadratic(q)),
        None if is_cyclic && (n % 2 == 1 || !k.is_real()) => Some(chabert_polya_cyclic(k, false)?),
        None if is_cyclic => opts
            .unit_norm_plus
            .map(|plus| chabert_polya_cyclic(k, plus))
            .transpose()?,
        None => None,
    };
    let genus_degree = if is_cyclic {
        Some(k.genus_degree_cyclic()?)
    } else {
        None
    };
    let predicted_class_group = if is_cyclic && n > 2 && crate::arith::is_prime(n) {
        Some(
            prime_degree_class_group_predict(k, n)?
                .invariant_factors()
                .to_vec(),
        )
    } else {
        None
    };

    Ok(FieldReport {
        schema: REPORT_SCHEMA,
        input: input.to_string(),
        shape: parsed.shape,
        modulus: k.modulus(),
        generators: k.generators().to_vec(),
        degree: n,
        is_real: k.is_real(),
        conductor,
        discriminant: DiscriminantReport {
            value: disc_value.to_string(),
            factors: disc.factors.clone(),
        },
        galois_group: k.galois_group().invariant_factors().to_vec(),
        is_cyclic,
        ramification: profile.primes,
        t_bound: tb,
        h,
        class_group: opts
            .class_group
            .as_ref()
            .map(|g| g.invariant_factors().to_vec()),
        genus_degree,
        polya_order,
        quadratic,
        predicted_class_group,
        certificates,
    })
}

fn resolve_h(quadratic: Option<&QuadraticFieldData>, opts: &FieldOptions) -> Result<Option<u64>> {
    let from_group = opts.class_group.as_ref().map(|g| g.order() as u64);
    let supplied = match (opts.h, from_group) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidInput(format!(
                "h = {a} but the class group has order {b}"
            )))
        }
        (a, b) => a.or(b),
    };
    match (quadratic, supplied) {
        (Some(q), Some(h)) if h != q.h => Err(Error::InvalidInput(format!(
            "h = {h} supplied, computed class number is {}",
            q.h
        ))),
        (Some(q), _) => Ok(Some(q.h)),
        (None, h) => Ok(h),
    }
}

/// An abelian Hilbert class field forces `h | t`.
fn t_divisibility(h: u64, tb: &TBoundBreakdown) -> Certificate {
    let divides = tb.t % h == 0;
    Certificate::new(
        if divides {
            Verdict::Inconclusive
        } else {
            Verdict::NonAbelian
        },
        Criterion::TBound,
    )
    .witness("h", h)
    .witness("t", tb.t)
    .witness("conductor", tb.m)
    .witness("h_divides_t", divides)
}
