//! Report schema and the deterministic JSON writer.
//!
//! Reports are serialized with every float printed at 17 significant
//! digits, which round-trips f64 losslessly and makes fixture diffs exact.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub provenance: Provenance,
    pub results: Vec<TaskResult>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub conventions: Conventions,
    pub seed: u64,
    pub fd_step: f64,
    pub classify_tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Conventions {
    pub signature: [i32; 4],
    pub orientation: String,
    pub two_form_basis_order: [String; 6],
    pub units: String,
}

impl Conventions {
    pub fn current() -> Conventions {
        Conventions {
            signature: [-1, 1, 1, 1],
            orientation: "volume form e0^e1^e2^e3 positive; star(1) = vol".to_string(),
            two_form_basis_order: [
                "01".into(),
                "02".into(),
                "03".into(),
                "23".into(),
                "31".into(),
                "12".into(),
            ],
            units: "natural units: c = eps0 = mu0 = 1".to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum TaskResult {
    Decompose {
        frame: String,
        e: [f64; 4],
        b: [f64; 4],
        d: [f64; 4],
        h: [f64; 4],
    },
    SemAbraham {
        frame: String,
        tensor: [[f64; 4]; 4],
        drive_forms: [[f64; 4]; 4],
        poynting: [f64; 4],
    },
    SemMinkowski {
        frame: String,
        tensor: [[f64; 4]; 4],
    },
    PostInvariant {
        chi: f64,
        chi_via_blocks: f64,
    },
    Classify {
        verdict: String,
        best_rapidity: [f64; 3],
        residual: f64,
        threshold: f64,
        restarts: usize,
        converged_restarts: usize,
    },
    VerifyVariation {
        lhs: f64,
        rhs: f64,
        residual: f64,
        tolerance: f64,
        passed: bool,
    },
    Selftest {
        identities: Vec<NamedError>,
        round_trip_error: f64,
        variation_residual: f64,
        passed: bool,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedError {
    pub name: String,
    pub max_error: f64,
}

/// JSON formatter printing every f64 with 17 significant digits.
struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            write!(writer, "null")
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
        self.serialize(&mut ser).expect("report serialization");
        let mut text = String::from_utf8(out).expect("utf8 json");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}
