//! Versioned text records of two-qubit closed-form values.
//!
//! ```text
//! qtemp-golden v1
//! convention <tag>
//! fields <name> <name> ...
//! <value> <value> ...
//! ```
//!
//! Values are written with 17 significant digits; an undefined value is the
//! token `undefined`. Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::models::two_qubit::{closed_form, TwoQubitXYParams, CONVENTION};

pub const GOLDEN_HEADER: &str = "qtemp-golden v1";

pub const GOLDEN_FIELDS: [&str; 14] = [
    "omega_S", "omega_B", "lambda", "beta", "Z", "eta", "zeta_plus", "zeta_minus", "mu1_plus", "mu1_minus",
    "mu2_plus", "mu2_minus", "beta_S", "beta_B",
];

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub params: TwoQubitXYParams,
    /// Closed-form values in `GOLDEN_FIELDS[4..]` order.
    pub values: Vec<Option<f64>>,
}

impl GoldenRecord {
    pub fn get(&self, field: &str) -> Option<Option<f64>> {
        let idx = GOLDEN_FIELDS.iter().position(|f| *f == field)?;
        match idx {
            0 => Some(Some(self.params.omega_s)),
            1 => Some(Some(self.params.omega_b)),
            2 => Some(Some(self.params.lambda)),
            3 => Some(Some(self.params.beta)),
            i => self.values.get(i - 4).copied(),
        }
    }
}

pub fn golden_record(p: &TwoQubitXYParams) -> Result<GoldenRecord> {
    let c = closed_form(p)?;
    Ok(GoldenRecord {
        params: *p,
        values: vec![
            Some(c.z),
            Some(c.energies[1]),
            Some(c.zeta_plus),
            Some(c.zeta_minus),
            Some(c.mu1_plus),
            Some(c.mu1_minus),
            Some(c.mu2_plus),
            Some(c.mu2_minus),
            c.beta_s,
            c.beta_b,
        ],
    })
}

fn fmt_value(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => "undefined".to_string(),
    }
}

pub fn write_golden(records: &[GoldenRecord]) -> String {
    let mut out = format!("{GOLDEN_HEADER}\nconvention {CONVENTION}\nfields {}\n", GOLDEN_FIELDS.join(" "));
    for r in records {
        let p = &r.params;
        let mut cells: Vec<String> = [p.omega_s, p.omega_b, p.lambda, p.beta]
            .iter()
            .map(|&x| fmt_value(Some(x)))
            .collect();
        cells.extend(r.values.iter().map(|&v| fmt_value(v)));
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn parse_value(token: &str, line: usize) -> Result<Option<f64>> {
    if token == "undefined" {
        return Ok(None);
    }
    token
        .parse::<f64>()
        .map(Some)
        .map_err(|_| Error::Validation(format!("golden line {line}: bad number {token:?}")))
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let bad = |msg: String| Error::Validation(msg);
    match lines.next() {
        Some((_, GOLDEN_HEADER)) => {}
        other => return Err(bad(format!("expected {GOLDEN_HEADER:?}, got {other:?}"))),
    }
    match lines.next() {
        Some((_, l)) if l.strip_prefix("convention ") == Some(CONVENTION) => {}
        other => return Err(bad(format!("unexpected convention line {other:?}"))),
    }
    match lines.next() {
        Some((_, l)) if l.strip_prefix("fields ") == Some(GOLDEN_FIELDS.join(" ").as_str()) => {}
        other => return Err(bad(format!("unexpected fields line {other:?}"))),
    }
    let mut out = Vec::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != GOLDEN_FIELDS.len() {
            return Err(bad(format!("golden line {n}: expected {} values, got {}", GOLDEN_FIELDS.len(), tokens.len())));
        }
        let values = tokens
            .iter()
            .map(|t| parse_value(t, n))
            .collect::<Result<Vec<_>>>()?;
        let param = |i: usize| values[i].ok_or_else(|| bad(format!("golden line {n}: parameter undefined")));
        let params = TwoQubitXYParams::new(param(0)?, param(1)?, param(2)?, param(3)?)?;
        out.push(GoldenRecord { params, values: values[4..].to_vec() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let records = vec![
            golden_record(&TwoQubitXYParams::new(2.0, 1.0, 0.1, 1.0).unwrap()).unwrap(),
            golden_record(&TwoQubitXYParams::new(1.0, 0.0, 0.3, 0.7).unwrap()).unwrap(),
        ];
        let text = write_golden(&records);
        assert!(text.contains("undefined"));
        assert_eq!(parse_golden(&text).unwrap(), records);
    }

    #[test]
    fn rejects_foreign_headers() {
        assert!(parse_golden("qtemp-golden v2\n").is_err());
        let text = format!("{GOLDEN_HEADER}\nconvention other\n");
        assert!(parse_golden(&text).is_err());
    }
}
