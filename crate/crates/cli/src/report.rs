//! Report documents written by `temp` and `bipartite`.

use qtemp_core::models::CONVENTION;
use qtemp_core::{
    correlation_inverse_temperature, inverse_temperature, verify_universal_relation, CorrelationReport, Error,
    TemperatureReport, UniversalRelation,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::{InputDocument, Settings};

pub const TOOL: &str = "qtemp";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub convention: &'static str,
    pub echo: InputDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<TemperatureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlation: Option<CorrelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<UniversalRelation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportDocument {
    fn new(echo: &InputDocument) -> Self {
        ReportDocument {
            tool: TOOL,
            version: VERSION,
            convention: CONVENTION,
            echo: echo.clone(),
            temperature: None,
            correlation: None,
            relation: None,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

fn strict_rank(rank: usize, dim: usize, settings: &Settings) -> Result<(), CliError> {
    if settings.strict && rank < dim {
        return Err(Error::RankDeficient { rank, dim }.into());
    }
    Ok(())
}

pub fn cmd_temp(doc: &InputDocument, settings: &Settings) -> Result<ReportDocument, CliError> {
    let (h, rho) = doc.single(&settings.tol)?;
    strict_rank(rho.rank(), rho.dim(), settings)?;
    let mut report = ReportDocument::new(doc);
    report.temperature = Some(inverse_temperature(&rho, &h, settings.clip)?);
    Ok(report)
}

pub fn cmd_bipartite(doc: &InputDocument, settings: &Settings) -> Result<ReportDocument, CliError> {
    let sys = doc.bipartite(&settings.tol)?;
    strict_rank(sys.rho_sb().rank(), sys.rho_sb().dim(), settings)?;
    let mut report = ReportDocument::new(doc);
    report.temperature = Some(inverse_temperature(sys.rho_sb(), &sys.h_sb()?, settings.clip)?);
    match correlation_inverse_temperature(&sys, settings.clip) {
        Ok(c) => report.correlation = Some(c),
        Err(e @ (Error::DegenerateDirection(_) | Error::InteractionInLocalSpan { .. })) => {
            report.notes.push(format!("no correlation temperature: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    report.relation = Some(verify_universal_relation(&sys, settings.clip)?);
    Ok(report)
}
