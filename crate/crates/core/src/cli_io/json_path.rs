//! Continuous paths as JSON documents.
//!
//! ```json
//! {"grid_step": 0.001, "horizon": 100, "prices": [...], "density": [...],
//!  "jumps": [{"t": 3.0, "dF": 0.5}], "tail": {"kind": "constant-yield", "params": {"c": 0.05}}}
//! ```
//!
//! `tail` may be omitted when a tail is given on the command line. Generated
//! Miao-Wang paths also carry their `scenario`.

use serde::{Deserialize, Serialize};

use crate::continuous_time::{ContinuousPath, CumulativeDividend, Jump};
use crate::error::{BubbleError, Result};
use crate::models::MiaoWangScenario;
use crate::tail::{TailDeclaration, TailModel, TailSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuousPathDoc {
    pub grid_step: f64,
    pub horizon: f64,
    pub prices: Vec<f64>,
    pub density: Vec<f64>,
    #[serde(default)]
    pub jumps: Vec<Jump>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<MiaoWangScenario>,
}

/// A parsed continuous path plus the scenario it was generated from, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousInput {
    pub path: ContinuousPath,
    pub scenario: Option<MiaoWangScenario>,
}

fn json_error(e: serde_json::Error) -> BubbleError {
    BubbleError::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    }
}

pub fn read_continuous_doc(bytes: &[u8]) -> Result<ContinuousPathDoc> {
    serde_json::from_slice(bytes).map_err(json_error)
}

impl ContinuousPathDoc {
    pub fn from_path(path: &ContinuousPath, scenario: Option<MiaoWangScenario>) -> Self {
        ContinuousPathDoc {
            grid_step: path.grid_step(),
            horizon: path.horizon(),
            prices: path.prices().to_vec(),
            density: path.dividends().density().to_vec(),
            jumps: path.dividends().jumps().to_vec(),
            tail: Some(TailSpec::from(*path.tail())),
            scenario,
        }
    }

    /// The flag wins over the embedded tail. Returns `None` when neither exists.
    pub fn resolve_tail(&self, flag: Option<&TailDeclaration>) -> Result<Option<TailModel>> {
        let last = match (self.prices.last(), self.density.last()) {
            (Some(&p), Some(&d)) => Some((p, d)),
            _ => None,
        };
        match (flag, &self.tail) {
            (Some(f), _) => f.resolve(last).map(Some),
            (None, Some(spec)) => TailDeclaration::from(spec.clone()).resolve(last).map(Some),
            (None, None) => Ok(None),
        }
    }

    pub fn into_input(self, tail: TailModel) -> Result<ContinuousInput> {
        let dividends = CumulativeDividend::new(self.density, self.jumps)?;
        let path = ContinuousPath::new(self.grid_step, self.horizon, self.prices, dividends, tail)?;
        Ok(ContinuousInput {
            path,
            scenario: self.scenario,
        })
    }
}

pub fn parse_continuous_json(bytes: &[u8], tail: Option<&TailDeclaration>) -> Result<ContinuousInput> {
    let doc = read_continuous_doc(bytes)?;
    let tail = doc.resolve_tail(tail)?.ok_or(BubbleError::MissingTail)?;
    doc.into_input(tail)
}

pub fn write_continuous_json(path: &ContinuousPath, scenario: Option<MiaoWangScenario>) -> String {
    serde_json::to_string(&ContinuousPathDoc::from_path(path, scenario)).expect("finite values serialise")
}

/// Scenario documents use the same keys as the `scenario` field.
pub fn parse_scenario_json(bytes: &[u8]) -> Result<MiaoWangScenario> {
    serde_json::from_slice(bytes).map_err(json_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_miao_wang;

    #[test]
    fn round_trip_keeps_every_field() {
        let mut scenario = MiaoWangScenario::new(2.0, 1.0, 0.5, 0.1);
        scenario.horizon = 2.0;
        scenario.grid_step = 0.01;
        let path = gen_miao_wang(&scenario).unwrap();
        let text = write_continuous_json(&path, Some(scenario));
        let back = parse_continuous_json(text.as_bytes(), None).unwrap();
        assert_eq!(back.path, path);
        assert_eq!(back.scenario, Some(scenario));
        assert_eq!(write_continuous_json(&back.path, back.scenario), text);
    }

    #[test]
    fn jumps_use_df_key() {
        let doc = br#"{"grid_step":0.5,"horizon":1,"prices":[1,1,1],"density":[0,0,0],
            "jumps":[{"t":0.5,"dF":0.25}],"tail":{"kind":"zero-dividends"}}"#;
        let input = parse_continuous_json(doc, None).unwrap();
        assert_eq!(input.path.dividends().jumps(), &[Jump { t: 0.5, size: 0.25 }]);
    }

    #[test]
    fn schema_errors() {
        let no_tail = br#"{"grid_step":0.5,"horizon":1,"prices":[1,1,1],"density":[0.1,0.1,0.1]}"#;
        assert_eq!(parse_continuous_json(no_tail, None), Err(BubbleError::MissingTail));
        let flag: TailDeclaration = "constant-yield".parse().unwrap();
        let input = parse_continuous_json(no_tail, Some(&flag)).unwrap();
        assert_eq!(*input.path.tail(), TailModel::ConstantYield { c: 0.1 });

        assert!(matches!(parse_continuous_json(b"{\"grid_step\":", None), Err(BubbleError::Parse { .. })));
        let bad_step = br#"{"grid_step":0.3,"horizon":1,"prices":[1,1,1,1],"density":[0,0,0,0],"tail":{"kind":"zero-dividends"}}"#;
        assert!(matches!(parse_continuous_json(bad_step, None), Err(BubbleError::StepMismatch { .. })));
    }
}
