use kg_nu::diagnostics::VerifyReport;
use kg_nu::{BoundState, Error, QuantumNumbers};
use serde::{Deserialize, Serialize};

/// Rounds to 15 significant digits so output is stable across platforms;
/// serialization then prints the shortest decimal that round-trips.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn error_text(e: &Error) -> String {
    format!("{}: {e}", e.kind())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    #[serde(rename = "N")]
    pub radial: u32,
    pub n: u32,
    pub m: i32,
    pub l_eff: Option<f64>,
    pub energy: Option<f64>,
    pub binding: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

impl SpectrumRecord {
    pub fn new(qn: QuantumNumbers, outcome: &kg_nu::Result<BoundState>) -> Self {
        let base = SpectrumRecord {
            radial: qn.radial,
            n: qn.polar,
            m: qn.m,
            l_eff: None,
            energy: None,
            binding: None,
            iterations: None,
            converged: false,
            residual: None,
            error: None,
        };
        match outcome {
            Ok(s) => SpectrumRecord {
                l_eff: Some(round15(s.angular.l_eff)),
                energy: Some(round15(s.energy)),
                binding: Some(round15(s.binding())),
                iterations: Some(s.iterations),
                converged: s.converged,
                residual: Some(round15(s.residual)),
                ..base
            },
            Err(e @ Error::NoConvergence { iterations, residual, energy }) => SpectrumRecord {
                energy: Some(round15(*energy)),
                iterations: Some(*iterations),
                residual: Some(round15(*residual)),
                error: Some(error_text(e)),
                ..base
            },
            Err(e) => SpectrumRecord { error: Some(error_text(e)), ..base },
        }
    }

    pub fn ok(&self) -> bool {
        self.converged && self.error.is_none()
    }
}

/// State data printed ahead of the sampled wavefunctions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionMeta {
    #[serde(rename = "N")]
    pub radial: u32,
    pub n: u32,
    pub m: i32,
    pub energy: f64,
    pub binding: f64,
    pub l_eff: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub u: f64,
    pub norm_radial: f64,
    pub norm_angular: f64,
    pub rmax: f64,
    pub samples: usize,
}

impl WavefunctionMeta {
    pub fn new(s: &BoundState, rmax: f64, samples: usize) -> Self {
        WavefunctionMeta {
            radial: s.qn.radial,
            n: s.qn.polar,
            m: s.qn.m,
            energy: round15(s.energy),
            binding: round15(s.binding()),
            l_eff: round15(s.angular.l_eff),
            b: round15(s.angular.b),
            c: round15(s.angular.c),
            u: round15(s.angular.u),
            norm_radial: round15(s.norm_radial),
            norm_angular: round15(s.norm_angular),
            rmax: round15(rmax),
            samples,
        }
    }

    /// `key=value` pairs in field order, for the CSV preamble.
    pub fn pairs(&self) -> Vec<(String, String)> {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::Object(map)) => map.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSample {
    pub r: f64,
    #[serde(rename = "R")]
    pub radial: f64,
    pub x: f64,
    #[serde(rename = "Theta")]
    pub angular: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Wavefunction {
    pub meta: WavefunctionMeta,
    pub samples: Vec<WavefunctionSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    #[serde(rename = "N")]
    pub radial: u32,
    pub n: u32,
    pub m: i32,
    pub energy: Option<f64>,
    pub oracle_energy: Option<f64>,
    pub energy_error: Option<f64>,
    pub lambda: Option<f64>,
    pub oracle_lambda: Option<f64>,
    pub lambda_error: Option<f64>,
    pub radial_order: Option<f64>,
    pub angular_order: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

impl VerifyRecord {
    pub fn new(qn: QuantumNumbers, outcome: &kg_nu::Result<VerifyReport>) -> Self {
        match outcome {
            Ok(r) => VerifyRecord {
                radial: qn.radial,
                n: qn.polar,
                m: qn.m,
                energy: Some(round15(r.energy)),
                oracle_energy: Some(round15(r.oracle_energy)),
                energy_error: Some(round15(r.energy_error)),
                lambda: Some(round15(r.lambda)),
                oracle_lambda: Some(round15(r.oracle_lambda)),
                lambda_error: Some(round15(r.lambda_error)),
                radial_order: r.radial_order.map(round15),
                angular_order: r.angular_order.map(round15),
                pass: r.passed(),
                error: None,
            },
            Err(e) => VerifyRecord {
                radial: qn.radial,
                n: qn.polar,
                m: qn.m,
                energy: None,
                oracle_energy: None,
                energy_error: None,
                lambda: None,
                oracle_lambda: None,
                lambda_error: None,
                radial_order: None,
                angular_order: None,
                pass: false,
                error: Some(error_text(e)),
            },
        }
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("records serialize");
    out.push('\n');
    out
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("records serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}
